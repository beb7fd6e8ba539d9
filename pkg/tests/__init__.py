"""Tests for the lemniscate_ruler package."""
