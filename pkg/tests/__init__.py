"""Unit test package for specpinn."""
