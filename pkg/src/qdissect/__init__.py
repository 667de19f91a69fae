"""Exact q-series 3-dissection toolkit for cubic partition pairs."""
