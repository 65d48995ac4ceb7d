"""Very regular primes for imaginary quadratic fields, and stable-cohomology series."""

__version__ = "0.1.0"
