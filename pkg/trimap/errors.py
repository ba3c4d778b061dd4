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


class TrimapError(Exception):
    """Base trimap exception class.
    """
    def __init__(self, message):
        super().__init__(message)

    @property
    def message(self):
        return self.args[0]


class ParameterError(TrimapError):
    """Raised when a numeric parameter is outside its allowed range.
    """
    pass


class ConfigError(TrimapError):
    pass


class ContractViolation(TrimapError):
    """Raised when an input does not satisfy an operation's contract, e.g.
    a point that is not on the blinding space.
    """
    pass


class SingularMatrixError(TrimapError):
    pass


class ExceptionalPoint(TrimapError):
    """Raised when a point lands where a transport or group-law formula is
    undefined. Callers resample the randomness that produced the point.
    """
    pass


class PoleHit(TrimapError):
    """Raised when a line function is evaluated at one of its zeros or
    poles.

    :param step: The index of the Miller step that hit the pole, if known.
    """
    def __init__(self, message, step=None):
        self.step = step
        super().__init__(message)

    def at_step(self, step):
        return type(self)(
            "{} (Miller step {})".format(self.message, step), step,
        )


class DegeneratePair(TrimapError):
    pass


class SpanFailure(TrimapError):
    pass


class SolveFailure(TrimapError):
    pass


class LinearFormDegenerate(TrimapError):
    pass


class DenominatorZero(TrimapError):
    """Raised when a published piece has a zero denominator at the point
    being evaluated. Re-randomizing the evaluation route avoids it.
    """
    pass


class SearchExhausted(TrimapError):
    pass


class BaseParseError(TrimapError):
    pass


class TrimapFileNotFoundError(TrimapError):
    @classmethod
    def from_filename(cls, filename):
        return cls("File not found: {}".format(filename))


class TrimapFileWriteError(TrimapError):
    @classmethod
    def from_filename(cls, filename):
        return cls("Could not write to file: {}".format(filename))
