# This file is a part of npcgroups.
#
# Copyright (c) 2026 npcgroups contributors
# This file is licensed under The MIT License (MIT).
# You can find the full license text in LICENSE.md in the root of this project.

"""
Exceptions raised by npcgroups. Each carries the exit status the command line uses for it.
"""

__all__ = ['NPCError', 'UsageError', 'MalformedInputError', 'DomainError', 'CapExceededError', 'InconclusiveError',
           'UnsupportedFieldError']


class NPCError(Exception):
    """Base class for every error npcgroups raises on purpose."""

    exit_code = 2


class UsageError(NPCError):
    """Bad command line."""

    exit_code = 1


class MalformedInputError(NPCError):
    """An input file or scalar string does not follow the expected schema or grammar."""

    exit_code = 1


class DomainError(NPCError):
    """A mathematical precondition failed (singular matrix, inverse of zero, non-commuting family, ...)."""

    exit_code = 2


class CapExceededError(NPCError):
    """A configured cap (element count, BFS radius, entry size) was hit before an exact answer was found."""

    exit_code = 3

    def __init__(self, message: str, cap: 'int' = None):
        super().__init__(message)
        self.cap = cap


class InconclusiveError(CapExceededError):
    """A search finished without producing a certificate. Raising the search radius may help."""


class UnsupportedFieldError(NPCError):
    """The computation needs arithmetic this package deliberately does not provide."""

    exit_code = 4
