"""
Unit tests for raman-beat.
"""
