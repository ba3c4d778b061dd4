# Copyright (C) 2026 taylor.fish <contact@taylor.fish>
#
# This file is part of trimap.
#
# trimap is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# trimap is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with trimap.  If not, see <http://www.gnu.org/licenses/>.

from .errors import ConfigError
import logging
import os

RETRY_BUDGET_VAR = "TRIMAP_RETRY_BUDGET"
DEFAULT_RETRY_BUDGET = 16

logger = logging.getLogger(__name__)


def get_retry_budget() -> int:
    """Gets the maximum number of attempts for operations that resample
    their randomness after hitting an exceptional point.

    :returns: The value of ``TRIMAP_RETRY_BUDGET``, or the default.
    """
    value = os.getenv(RETRY_BUDGET_VAR)
    if value is None or value == "":
        return DEFAULT_RETRY_BUDGET
    try:
        budget = int(value)
    except ValueError as e:
        raise ConfigError(
            "{} must be a positive integer, not {!r}".format(
                RETRY_BUDGET_VAR, value,
            )
        ) from e
    if budget < 1:
        raise ConfigError(
            "{} must be a positive integer, not {}".format(
                RETRY_BUDGET_VAR, budget,
            )
        )
    return budget


def log_retry(what: str, attempt: int, exc: Exception):
    message = getattr(exc, "message", None) or str(exc)
    logger.warning("%s: retry %d after: %s", what, attempt, message)


def attempts(what: str, catch, budget: int = None):
    """Yields attempt numbers for a retry loop. The caller runs one attempt
    per iteration and ``return``\\ s or ``break``\\ s on success; failures of
    the types in ``catch`` are recorded with :meth:`Attempt.failed`.

    Usage::

        for attempt in attempts("add_hat", DenominatorZero):
            with attempt:
                return do_work(attempt.index)
        # unreachable: attempts() raises once the budget is used up

    :param what: A short description used in log messages.
    :param catch: An exception type or tuple of types treated as retryable.
    :param budget: The number of attempts; defaults to
      :func:`get_retry_budget`.
    """
    if budget is None:
        budget = get_retry_budget()
    last = None
    for index in range(budget):
        attempt = Attempt(what, index, catch)
        yield attempt
        last = attempt.exc
        if last is None:
            return
    raise last


class Attempt:
    def __init__(self, what, index, catch):
        self.what = what
        self.index = index
        self.catch = catch
        self.exc = None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is None or not isinstance(exc, self.catch):
            return False
        self.exc = exc
        log_retry(self.what, self.index + 1, exc)
        return True
