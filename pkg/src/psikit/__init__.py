"""Specialization functions, motivic classes and CSM identities for normal-crossings resolutions."""
__version__ = "0.1.0"
