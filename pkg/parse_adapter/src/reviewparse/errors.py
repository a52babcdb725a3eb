"""Exception types for the review parsing adapter."""


class AdapterError(Exception):
    """Base class for everything this package raises on purpose."""


class ModelError(AdapterError):
    """A parsing model could not be loaded; the message says how to get it."""


class InputError(AdapterError):
    """The reviews file is missing or unreadable as a whole."""
