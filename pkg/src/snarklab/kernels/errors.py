"""Exceptions shared by both kernel backends."""


class KernelTimeout(Exception):
    """A search exceeded its wall-clock deadline."""


class KernelLimit(Exception):
    """A search exceeded an explicit result-size cap."""
