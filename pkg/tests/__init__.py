"""Tests for pl-spectra."""
