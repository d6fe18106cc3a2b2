"""Tests for MSFT Agent Framework."""
