"""adlercheck: exact verification of the PSL2(F19)-invariant cubic sevenfold.

Every computational claim about the Klein-type cubic sevenfold is checked with
exact arithmetic in cyclotomic fields: the group and its 9-dimensional
representation, character decompositions, Jacobian-ring Hodge numbers and the
period-lattice polarization. Nothing is ever evaluated in floating point.
"""

__version__ = "1.0.0"
