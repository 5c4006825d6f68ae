"""Tests for eb_update."""
