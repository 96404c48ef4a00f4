"""Ice quivers with potential: folding along finite group actions, orbit
mutation, differential graded completions, and cluster characters."""

__version__ = "0.1.0"
