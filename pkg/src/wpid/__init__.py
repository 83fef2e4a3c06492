"""Exact construction and verification of covariant hyperelliptic
P-function identities for curves of genus 1, 2 and 3.

Everything in this package computes over exact rationals; there are no
tolerances anywhere.  The main entry points are the identity catalog
(:mod:`wpid.catalog`), the function-field oracle (:mod:`wpid.oracle`) and
the ``wpid`` command line front end (:mod:`wpid.cli`).
"""

__version__ = "0.1.0"
