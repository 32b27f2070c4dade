import itertools
import json
import logging
import random

import pytest

from crystalpaths import energy as en
from crystalpaths.energy import (
    augmented_energy,
    build_local_table,
    get_local_table,
    local_energy,
    local_iso,
    path_energy,
    phi_matching_element,
)
from crystalpaths.paths import Path, enumerate_paths, parse_path
from crystalpaths.tableaux import RectShape, Tableau, enumerate_tableaux, highest_weight_tableau
from crystalpaths.weights import LevelWeight

S11 = RectShape(1, 1)
S12 = RectShape(1, 2)
S21 = RectShape(2, 1)


def shapes_for(n):
    return [s for s in (S11, S12, S21) if s.rows < n]


def test_equal_shapes_give_identity():
    for n in (2, 3):
        for shape in shapes_for(n):
            table = build_local_table(n, shape, shape)
            for key, value in table.iso.items():
                assert key == value


def test_mixed_shape_bijection_n2():
    table = build_local_table(2, S12, S11)
    expected = {
        ("1,1", "1"): ("1", "1,1"),
        ("1,1", "2"): ("1", "1,2"),
        ("1,2", "1"): ("2", "1,1"),
        ("1,2", "2"): ("1", "2,2"),
        ("2,2", "1"): ("2", "1,2"),
        ("2,2", "2"): ("2", "2,2"),
    }
    got = {
        (str(k[0]), str(k[1])): (str(v[0]), str(v[1])) for k, v in table.iso.items()
    }
    assert got == expected


def test_iso_commutes_with_all_operators():
    for n in (2, 3):
        for s2, s1 in itertools.product(shapes_for(n), repeat=2):
            table = get_local_table(n, s2, s1)
            for (a, b), (c, d) in table.iso.items():
                src = Path(n, (a, b))
                img = Path(n, (c, d))
                for i in range(n):
                    up_src = src.e(i)
                    up_img = img.e(i)
                    assert (up_src is None) == (up_img is None)
                    if up_src is not None:
                        assert table.apply(*up_src.factors) == up_img.factors
                    down_src = src.f(i)
                    down_img = img.f(i)
                    assert (down_src is None) == (down_img is None)
                    if down_src is not None:
                        assert table.apply(*down_src.factors) == down_img.factors


def test_iso_reverse_is_identity():
    for n in (2, 3):
        for s2, s1 in itertools.product(shapes_for(n), repeat=2):
            forward = get_local_table(n, s2, s1)
            backward = get_local_table(n, s1, s2)
            for key, value in forward.iso.items():
                assert backward.apply(*value) == key


def _swap_at(n, triple, pos):
    left, right = triple[pos], triple[pos + 1]
    new_left, new_right = local_iso(left, right)
    out = list(triple)
    out[pos], out[pos + 1] = new_left, new_right
    return tuple(out)


def test_yang_baxter():
    for n in (2, 3):
        pool_shapes = shapes_for(n)
        for sh in itertools.product(pool_shapes, repeat=3):
            pools = [enumerate_tableaux(s, n) for s in sh]
            for triple in itertools.product(*pools):
                a = _swap_at(n, _swap_at(n, _swap_at(n, triple, 0), 1), 0)
                b = _swap_at(n, _swap_at(n, _swap_at(n, triple, 1), 0), 1)
                assert a == b


def test_local_energy_normalization_and_values():
    for n in (2, 3):
        for s2, s1 in itertools.product(shapes_for(n), repeat=2):
            table = get_local_table(n, s2, s1)
            u = (highest_weight_tableau(s2, n), highest_weight_tableau(s1, n))
            assert table.energy[u] == 0
    # two-value example: H is 0 on the highest component and -1 on the other
    table = get_local_table(2, S11, S11)
    values = {(str(k[0]), str(k[1])): v for k, v in table.energy.items()}
    assert values == {("1", "1"): 0, ("1", "2"): 0, ("2", "2"): 0, ("2", "1"): -1}
    assert set(values.values()) == {0, -1}


def test_local_energy_constant_along_classical_strings():
    for n in (2, 3):
        for s2, s1 in itertools.product(shapes_for(n), repeat=2):
            table = get_local_table(n, s2, s1)
            for (a, b), h in table.energy.items():
                src = Path(n, (a, b))
                for i in range(1, n):
                    up = src.e(i)
                    if up is not None:
                        assert table.energy[up.factors] == h


def test_zero_string_steps_change_energy_by_one():
    table = get_local_table(2, S11, S11)
    x = (Tableau(2, ((2,),)), Tableau(2, ((1,),)))
    up = Path(2, x).e(0)
    assert up is not None
    assert abs(table.energy[up.factors] - table.energy[x]) == 1


def test_path_energy_examples():
    assert path_energy(Path(2, (Tableau(2, ((1,),)),))) == 0
    assert path_energy(Path(2, ())) == 0
    values = {str(p): path_energy(p) for p in enumerate_paths(2, (S11, S11))}
    assert values == {"1|1": 0, "1|2": 0, "2|1": -1, "2|2": 0}
    assert path_energy(parse_path("2|1|1", 2)) == -1
    assert path_energy(parse_path("1|2|1", 2)) == -2


def test_homogeneous_energy_closed_form():
    # for equal factors the sweep reduces to sum (L - i) H(b_{i+1}, b_i)
    for n in (2, 3):
        for length in (2, 3, 4):
            table = get_local_table(n, S11, S11)
            for p in enumerate_paths(n, (S11,) * length):
                fs = p.factors
                expected = 0
                for idx in range(length - 1):
                    expected += (idx + 1) * table.energy[(fs[idx], fs[idx + 1])]
                assert path_energy(p) == expected


def _energy_pairwise(p):
    # evaluate the defining sum pair by pair, transporting from scratch
    fs = p.factors
    length = len(fs)
    total = 0
    for j in range(2, length + 1):
        for i in range(1, j):
            x = fs[length - j]
            for k in range(j - 1, i, -1):
                x = local_iso(x, fs[length - k])[1]
            total += local_energy(x, fs[length - i])
    return total


def test_path_energy_transport_order_immaterial():
    rng = random.Random(77)
    for n in (2, 3):
        pool_shapes = shapes_for(n)
        for _ in range(40):
            sh = [rng.choice(pool_shapes) for _ in range(3)]
            pools = [enumerate_tableaux(s, n) for s in sh]
            p = Path(n, tuple(rng.choice(pool) for pool in pools))
            assert path_energy(p) == _energy_pairwise(p)


def test_energy_invariant_under_classical_raising():
    rng = random.Random(78)
    hits = 0
    while hits < 500:
        n = rng.choice([2, 3])
        length = rng.randint(2, 4)
        pools = [enumerate_tableaux(S11, n) for _ in range(length)]
        p = Path(n, tuple(rng.choice(pool) for pool in pools))
        i = rng.randint(1, n - 1)
        up = p.e(i)
        if up is None:
            continue
        assert path_energy(up) == path_energy(p)
        hits += 1


def test_zero_raising_drops_energy_for_vacuum_applicable_edges():
    # when the raising passes the formal vacuum factor untouched the energy
    # drops by exactly one
    for n in (2, 3):
        ell = 1
        for length in (2, 3):
            for p in enumerate_paths(n, (S11,) * length):
                if p.eps(0) > ell:
                    up = p.e(0)
                    assert path_energy(up) == path_energy(p) - 1


def test_phi_matching_element():
    assert phi_matching_element(2, S11, LevelWeight.vacuum(2, 1)) == Tableau(2, ((2,),))
    assert phi_matching_element(2, S11, LevelWeight.fundamental(1, 2)) == Tableau(2, ((1,),))
    assert phi_matching_element(3, RectShape(1, 2), LevelWeight.vacuum(3, 2)) == Tableau(
        3, ((3, 3),)
    )
    with pytest.raises(ValueError):
        phi_matching_element(2, S11, LevelWeight.vacuum(2, 2))


def test_augmented_energy_constant_shift_for_vacuum():
    for n in (2, 3):
        for ell in (1, 2):
            lam = LevelWeight.vacuum(n, ell)
            for length in (1, 2, 3):
                shifts = {
                    augmented_energy(p, lam, RectShape(1, ell)) - path_energy(p)
                    for p in enumerate_paths(n, (S11,) * length)
                }
                assert len(shifts) == 1


def test_augmented_energy_empty_path():
    lam = LevelWeight.vacuum(2, 1)
    assert augmented_energy(Path(2, ()), lam, S11) == 0


def test_cache_round_trip_and_determinism(tmp_path):
    cache = str(tmp_path)
    en.clear_memory_tables()
    table = get_local_table(2, S12, S11, cache_dir=cache)
    name = en.cache_file_name(2, S12, S11)
    blob1 = (tmp_path / name).read_bytes()
    en.clear_memory_tables()
    (tmp_path / name).unlink()
    rebuilt = get_local_table(2, S12, S11, cache_dir=cache)
    blob2 = (tmp_path / name).read_bytes()
    assert blob1 == blob2
    assert rebuilt.iso == table.iso and rebuilt.energy == table.energy
    en.clear_memory_tables()
    loaded = get_local_table(2, S12, S11, cache_dir=cache)
    assert loaded.iso == table.iso and loaded.energy == table.energy


def test_cache_corruption_triggers_rebuild(tmp_path, caplog):
    cache = str(tmp_path)
    en.clear_memory_tables()
    get_local_table(2, S11, S11, cache_dir=cache)
    name = tmp_path / en.cache_file_name(2, S11, S11)
    raw = bytearray(name.read_bytes())
    raw[len(raw) // 2] ^= 0xFF
    name.write_bytes(bytes(raw))
    en.clear_memory_tables()
    with caplog.at_level(logging.WARNING, logger="crystalpaths.energy"):
        table = get_local_table(2, S11, S11, cache_dir=cache)
    assert any("rebuilding" in rec.message for rec in caplog.records)
    assert len(table.iso) == 4
    # the rebuilt file is valid again
    en.clear_memory_tables()
    with caplog.at_level(logging.WARNING, logger="crystalpaths.energy"):
        caplog.clear()
        get_local_table(2, S11, S11, cache_dir=cache)
    assert not caplog.records


def test_cache_version_mismatch_rejected(tmp_path, caplog):
    cache = str(tmp_path)
    en.clear_memory_tables()
    get_local_table(2, S11, S11, cache_dir=cache)
    name = tmp_path / en.cache_file_name(2, S11, S11)
    payload = json.loads(name.read_text())
    payload["version"] = 999
    name.write_text(json.dumps(payload))
    en.clear_memory_tables()
    with caplog.at_level(logging.WARNING, logger="crystalpaths.energy"):
        get_local_table(2, S11, S11, cache_dir=cache)
    assert any("format version" in rec.message for rec in caplog.records)
