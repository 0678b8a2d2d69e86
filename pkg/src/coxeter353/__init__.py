"""Normal subgroups of the [3,5,3] rotation group with quotient L_2(q), and their geometry."""

__version__ = "0.1.0"
