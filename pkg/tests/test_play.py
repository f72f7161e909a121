import io
import random
import re

import pytest

from evictlab import families
from evictlab.game import solve_worklist
from evictlab.graph import bits
from evictlab.play import Session, Unplayable, render


def play(g, k, role, lines, **kw):
    out = io.StringIO()
    result = Session(g, k, role, io.StringIO("".join(f"{x}\n" for x in lines)), out, **kw).run()
    return result, out.getvalue()


def test_render_markers():
    g = families.path(3)
    assert render(g, 0b011) == "0:S 1:G 2:."


def test_engine_never_loses_c7_with_four_guards():
    rng = random.Random(0)
    attacks = [rng.randrange(7) for _ in range(400)]
    result, text = play(families.cycle(7), 4, "attacker", attacks, max_rounds=100)
    assert result == "defender"
    assert "attacker wins" not in text


def test_human_defender_loses_c7_with_three_guards():
    g = families.cycle(7)
    fp = solve_worklist(g, 3)
    rng = random.Random(2)
    for start in fp.dominating:
        replies = [rng.randrange(7) for _ in range(200)]
        result, text = play(g, 3, "defender", [" ".join(map(str, bits(start)))] + replies)
        assert result == "attacker"
        assert len(re.findall(r"engine attacks \d", text)) <= fp.depth[start]
        assert "engine attacks by certificate" in text


def test_unoccupied_attack_is_rejected():
    g = families.cycle(7)
    result, text = play(g, 4, "attacker", ["banana", "99", "3", "0"], max_rounds=1)
    assert "not a vertex" in text
    assert "unoccupied; only vertices with a guard may be attacked" in text


def test_bad_placement_is_reprompted():
    g = families.cycle(7)
    result, text = play(g, 3, "defender", ["0 1", "0 1 2", "0 0 1", "q"])
    assert text.count("give 3 distinct vertices") == 2
    assert "do not dominate" in text
    assert result == "quit"


def test_heuristic_is_announced():
    rng = random.Random(4)
    result, text = play(families.cycle(7), 3, "attacker", [rng.randrange(7) for _ in range(2000)])
    assert "cannot defend" in text and "heuristic" in text
    assert result == "attacker"
    result, text = play(families.cycle(7), 4, "defender", ["0 2 4 6", "q"])
    assert "heuristic" in text


def test_refuses_unsolvable_sizes():
    with pytest.raises(Unplayable):
        Session(families.cycle(40), 20, "attacker")
    with pytest.raises(Unplayable):
        Session(families.cycle(7), 2, "attacker")
