"""Test suite for Journal Status."""
