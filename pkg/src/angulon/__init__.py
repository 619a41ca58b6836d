"""Angular-integral toolkit: exact principal terms, Bessel-polynomial
families, Haar Monte-Carlo oracles, and executable identity checks."""

__version__ = "0.1.0"
