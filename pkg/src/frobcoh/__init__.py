"""Cohomology of Frobenius kernels and Borel subgroups, computed exactly over F_p."""
