"""Acting-side carriers: free monoid cells and lattice cells."""

import pytest

from natext.carriers import FreeCarrier, GridCarrier, carrier_for
from natext.errors import NatextError


def test_free_ball_shortlex():
    car = FreeCarrier(2)
    b1 = car.ball(1)
    assert b1 == [(), (0,), (1,)]
    b2 = car.ball(2)
    # (2^(r+1) - 1) cells on two generators
    assert len(b2) == 7
    assert b2[:3] == b1
    assert set(b2[3:]) == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_free_step_and_place():
    car = FreeCarrier(2)
    t = (1, 0)
    # step prepends: the action edge t -> gen . t
    assert car.step(0, t) == (0, 1, 0)
    # place appends: pattern cell d placed at s sits at d . s
    assert car.place((0, 1), (1,)) == (0, 1, 1)
    assert car.divide_left((0, 1), (0, 1, 1)) == (1,)
    assert car.divide_left((0, 1), (1, 1)) is None


def test_free_cell_formats():
    car = FreeCarrier(2)
    names = ("a", "b")
    assert car.format_cell((), names) == "1"
    assert car.format_cell((0, 1), names) == "a b"
    assert car.parse_cell("a b", names) == (0, 1)
    assert car.parse_cell("1", names) == ()
    assert car.parse_cell([0, 1], names) == (0, 1)
    assert car.cell_json((1,), names) == ["b"]


def test_grid_box_row_major():
    car = GridCarrier(2)
    cells = car.box((2, 2))
    assert cells == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert car.box(2) == cells


def test_grid_step_place_addition():
    car = GridCarrier(2)
    assert car.step(0, (3, 4)) == (4, 4)
    assert car.place((1, 0), (3, 4)) == (4, 4)
    assert car.divide_left((1, 1), (4, 5)) == (3, 4)


def test_grid_nonneg_vs_z():
    nat = GridCarrier(1, nonneg=True)
    zed = GridCarrier(1, nonneg=False)
    assert nat.is_cell((0,))
    assert not nat.is_cell((-1,))
    assert zed.is_cell((-1,))
    assert nat.divide_left((1,), (0,)) is None  # would need cell (-1,)
    assert zed.divide_left((1,), (0,)) == (-1,)


def test_carrier_for():
    assert carrier_for("free", 2).kind == "free"
    assert carrier_for("grid", 1).kind == "grid"
    assert carrier_for("grid-z", 1).kind == "grid-z"
    with pytest.raises(NatextError):
        carrier_for("torus", 1)
