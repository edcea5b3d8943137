"""Shared list of acceptance result lines, echoed in the terminal summary."""

LINES = []
