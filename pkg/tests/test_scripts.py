import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "scripts"))

import identity_buffer_sweep  # noqa: E402
import round_trip_sweep  # noqa: E402
import witness_ladder  # noqa: E402


def test_witness_ladder_small():
    rows = witness_ladder.run(witness_ladder.Config(sizes=(16,)))
    assert rows[0]["k1_status"] == "Holds" and rows[0]["k2_status"] == "Fails"


def test_round_trip_sweep_small():
    rows = round_trip_sweep.run(round_trip_sweep.Config(draws=9, verify=True))
    assert all(r["matched"] and r["consistent"] for r in rows)


@pytest.mark.parametrize("pct, ok", [(50, True), (90, False)])
def test_identity_sweep_decay(pct, ok):
    rows = identity_buffer_sweep.run(identity_buffer_sweep.Config(buffers=(24,), radii_pct=(pct,), draws=4))
    assert (rows[0]["worst_residual"] <= 1e-8) is ok
