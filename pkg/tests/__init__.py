"""Tests for ladderlcu."""
