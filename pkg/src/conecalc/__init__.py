"""Exact cone calculus for embedded schemes over Q."""
