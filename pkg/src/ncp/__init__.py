"""Local-degree arithmetic, Brauer invariants, cover certificates and central extensions
for noncrossed-product bounds."""

__version__ = "0.1.0"
