"""Shared plumbing for gaussmoser."""
