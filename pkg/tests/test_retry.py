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

from trimap.errors import ConfigError, DenominatorZero, PoleHit
from trimap.retry import (
    DEFAULT_RETRY_BUDGET, RETRY_BUDGET_VAR, attempts, get_retry_budget,
)
import logging
import pytest


def flaky(failures, exc_type=DenominatorZero):
    calls = []

    def run():
        for attempt in attempts("flaky", DenominatorZero):
            with attempt:
                calls.append(attempt.index)
                if len(calls) <= failures:
                    raise exc_type("no luck")
                return len(calls)
    return run, calls


def test_budget_default(monkeypatch):
    monkeypatch.delenv(RETRY_BUDGET_VAR, raising=False)
    assert get_retry_budget() == DEFAULT_RETRY_BUDGET
    monkeypatch.setenv(RETRY_BUDGET_VAR, "")
    assert get_retry_budget() == DEFAULT_RETRY_BUDGET


@pytest.mark.parametrize("value", ["zero", "0", "-3"])
def test_budget_invalid(monkeypatch, value):
    monkeypatch.setenv(RETRY_BUDGET_VAR, value)
    with pytest.raises(ConfigError) as info:
        get_retry_budget()
    assert RETRY_BUDGET_VAR in info.value.message


def test_retries_then_succeeds(caplog):
    run, calls = flaky(2)
    with caplog.at_level(logging.WARNING, logger="trimap.retry"):
        assert run() == 3
    assert calls == [0, 1, 2]
    retries = [r for r in caplog.records if r.name == "trimap.retry"]
    assert len(retries) == 2
    assert "flaky: retry 1 after: no luck" in retries[0].getMessage()


def test_budget_exhausted(monkeypatch):
    monkeypatch.setenv(RETRY_BUDGET_VAR, "3")
    run, calls = flaky(10)
    with pytest.raises(DenominatorZero):
        run()
    assert calls == [0, 1, 2]


def test_other_errors_pass_through():
    run, calls = flaky(1, PoleHit)
    with pytest.raises(PoleHit):
        run()
    assert calls == [0]
