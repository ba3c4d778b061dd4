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

from . import blinding, curve, errors, field, linalg, local, ncpoly, pairing
from . import parser, poly, program, publisher, retry, suites, writer
from .trimap import __version__, encode, setup, tri_eval
from .main import main, main_with_argv

if False:
    assert [blinding, curve, errors, field, linalg, local, ncpoly, pairing]
    assert [parser, poly, program, publisher, retry, suites, writer]
    assert [__version__, encode, setup, tri_eval]
    assert [main, main_with_argv]
