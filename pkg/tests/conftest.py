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

from trimap.blinding import keygen
from trimap.curve import CurveParams, torsion_basis
from trimap.field import FieldParams, field_setup
from trimap.trimap import setup
import pytest
import random

# Fixed seeds keep every session-scoped object identical between runs.
INSTANCE_SEED = 42


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def ext_field() -> FieldParams:
    """F_{7^3} with a random modulus and published basis."""
    return field_setup(7, 3, 11)


@pytest.fixture(scope="session")
def prime_field() -> FieldParams:
    return FieldParams.prime(101)


@pytest.fixture(scope="session")
def small_curve():
    """y^2 = x^3 + x + 3 over F_{11^2}. Its group order is divisible by
    3^2 and E[3] is rational, which keeps exhaustive checks cheap.
    """
    params = field_setup(11, 2, 5)
    return CurveParams(params, 1, 3, 3)


@pytest.fixture(scope="session")
def instance():
    return setup(n=2, ell=5, seed=INSTANCE_SEED)


@pytest.fixture(scope="session")
def secret(instance):
    return instance.secret


@pytest.fixture(scope="session")
def public(instance):
    return instance.public


@pytest.fixture(scope="session")
def key3(ext_field):
    return keygen(3, ext_field, False, random.Random(3))


@pytest.fixture(scope="session")
def twisted_key3(ext_field):
    return keygen(3, ext_field, True, random.Random(4))


@pytest.fixture(scope="session")
def small_basis(small_curve):
    return torsion_basis(small_curve, 0)
