"""Front-tracking laboratory for the one-dimensional ZND piston problem."""

__version__ = "0.1.0"
