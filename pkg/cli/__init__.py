"""
Command-line front end: the pl binary.
"""
