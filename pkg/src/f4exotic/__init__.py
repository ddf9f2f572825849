"""Verification workbench for the exotic nilpotent cone of F4 over fields
of characteristic 2: root-system combinatorics, the 52-dimensional module
V = g_s + g/g_s with its explicit Chevalley group action, and enumeration
kernels that reproduce the orbit census, its point counts over F_q, the
stabilizer data and the affine-paving structure of the associated Springer
fibers at q = 2."""

__version__ = "0.1.0"
