"""Minimal surfaces from rational Weierstrass data on punctured spheres."""
__version__ = "0.1.0"
SCHEMA_VERSION = "1"
