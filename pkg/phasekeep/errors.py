"""Base exception for phasekeep."""


class PhaseKeepError(Exception):
    """Root of every error raised by phasekeep."""

    pass
