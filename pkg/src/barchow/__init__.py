"""barchow: exact-arithmetic bar-construction and linear-Chow-ring calculus."""

__version__ = "0.1.0"
