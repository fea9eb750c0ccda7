"""Tests for the urnlift measures, urns, lift, statistics and CLI."""
