"""Tests for clusternet."""
