"""Exact germs at +infinity, polynomial zero-sets and smooth extension tools."""

__version__ = "0.1.0"
