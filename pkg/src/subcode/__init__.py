"""Non-constant-dimension subspace codes from Pluecker coordinates and Schubert cells."""

__version__ = "0.1.0"
