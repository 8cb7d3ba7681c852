#!/usr/bin/env python3
"""Integration tests for levrecon."""
