"""Test suite for retractlab."""
