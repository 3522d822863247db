"""Measure and optimize network sovereignty with Cut Set Coloring scores."""
