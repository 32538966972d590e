from __future__ import annotations

import pytest

from pgroup_workbench.catalog import (
    BUILTIN_IDS,
    CHECK_IDS,
    DISCREPANCY,
    PASS,
    builtin,
    sigma_t,
    verify,
)
from pgroup_workbench.cyclotomic import get_context, root_of_unity
from pgroup_workbench.errors import UnknownId
from pgroup_workbench.groups import min_generators


@pytest.mark.parametrize("id", BUILTIN_IDS)
def test_every_builtin_builds(id):
    entry = builtin(id)
    assert entry.id.startswith(id.split("(")[0])
    if entry.kind != "polynomial":
        G = entry.group()
        assert G.order >= 1


def test_unknown_id():
    with pytest.raises(UnknownId):
        builtin("no-such-group")
    with pytest.raises(UnknownId):
        verify("no-such-check")


def test_sigma_t_degrees():
    sigma, t = sigma_t((1, 1, 1))
    assert sigma.is_identity() is False and sigma.ctx.root_order == 3
    sigma9, _ = sigma_t((9, 3, 1))
    ctx9 = get_context(9)
    assert sigma9.ctx == ctx9
    assert builtin("sigma_t(9,3,1)").root_order == 9
    # lambda of degree 9 is a primitive ninth root
    entries = [x for x in sigma9.entries() if not x.is_zero()]
    assert root_of_unity(1, ctx9) in entries or root_of_unity(8, ctx9) in entries or any(
        x ** 9 == ctx9.one() and x ** 3 != ctx9.one() for x in entries
    )
    G = builtin("sigma_t(1,1,1)").group()
    assert min_generators(G, 3) <= 3


def test_verify_outcomes():
    results = verify()
    assert [r.id for r in results] == sorted(CHECK_IDS)
    by_id = {r.id: r for r in results}
    assert by_id["cA1-semiinvariance"].verdict == DISCREPANCY
    assert all(r.verdict == PASS for r in results if r.id != "cA1-semiinvariance")


def test_verify_is_thread_independent():
    one = [r.to_json() for r in verify("all", threads=1)]
    four = [r.to_json() for r in verify("all", threads=4)]
    assert one == four


def test_single_check():
    [r] = verify("heisenberg-rank")
    assert r.verdict == PASS and r.computed == 2
