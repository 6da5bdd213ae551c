"""Tests for altroute."""
