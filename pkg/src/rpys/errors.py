"""Exception types shared across the package.

The CLI maps these onto exit statuses: UsageError -> 1, InputError -> 2,
OutputError -> 3. Everything else is a bug and surfaces as a traceback.
"""


class RpysError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(RpysError):
    """Bad flags, bad config values, or an unusable argument combination."""


class InputError(RpysError):
    """An input file is unreadable or not decodable text."""


class OutputError(RpysError):
    """An artifact could not be written."""
