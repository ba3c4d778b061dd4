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

from pathlib import Path
import pytest

ROOT = Path(__file__).resolve().parent.parent
HEADER = "# Copyright (C) 2026 taylor.fish <contact@taylor.fish>"
FOOTER = "# along with trimap.  If not, see <http://www.gnu.org/licenses/>."
SOURCES = sorted(
    [ROOT / "setup.py", ROOT / "trimap.py"] +
    list((ROOT / "trimap").glob("*.py")) +
    list((ROOT / "tests").glob("*.py")),
)


@pytest.mark.parametrize("path", SOURCES, ids=lambda p: p.name)
def test_license_header(path):
    head = path.read_text(encoding="utf-8").splitlines()[:20]
    assert HEADER in head[:2]
    assert FOOTER in head
