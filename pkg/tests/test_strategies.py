"""Strategy naming: classic encodings, enumeration, round-trips, errors."""

import pytest

from metade.model import HyperConfig
from metade.strategies import decode_strategy_name, encode_strategy, enumerate_strategies

CLASSIC_ROWS = [
    ("DE/rand/1/bin", (1, 1, 1, 1)),
    ("DE/best/1/bin", (2, 2, 1, 1)),
    ("DE/current-to-best/1/bin", (4, 2, 1, 1)),
    ("DE/rand/2/bin", (1, 1, 2, 1)),
    ("DE/best/2/bin", (2, 2, 2, 1)),
    ("DE/current-to-pbest/1/bin", (4, 3, 1, 1)),
    # No crossover token: shorthand for the rand-base arithmetic variant.
    ("DE/current-to-rand/1", (1, 1, 1, 3)),
]


@pytest.mark.parametrize("name,expected", CLASSIC_ROWS)
def test_classic_encodings(name, expected):
    assert encode_strategy(name) == expected


def test_classic_decodings_are_canonical():
    assert decode_strategy_name(1, 1, 1, 1) == "DE/rand/1/bin"
    assert decode_strategy_name(2, 2, 1, 1) == "DE/best/1/bin"
    assert decode_strategy_name(4, 2, 1, 1) == "DE/current-to-best/1/bin"
    assert decode_strategy_name(1, 1, 2, 1) == "DE/rand/2/bin"
    assert decode_strategy_name(2, 2, 2, 1) == "DE/best/2/bin"
    assert decode_strategy_name(4, 3, 1, 1) == "DE/current-to-pbest/1/bin"
    # The shorthand's tuple decodes to its canonical equivalent.
    assert decode_strategy_name(1, 1, 1, 3) == "DE/rand/1/arith"


def test_directional_current_to_rand_is_a_distinct_strategy():
    # With an explicit crossover token the name parses by the regular
    # grammar: a directional current->rand mutation, not the shorthand.
    assert encode_strategy("DE/current-to-rand/1/bin") == (4, 1, 1, 1)
    assert decode_strategy_name(4, 1, 1, 1) == "DE/current-to-rand/1/bin"


def test_enumeration_covers_exactly_192_unique_strategies():
    pairs = enumerate_strategies()
    tuples = [t for t, _ in pairs]
    names = [n for _, n in pairs]
    assert len(pairs) == 192
    assert len(set(tuples)) == 192
    assert len(set(names)) == 192
    assert tuples == sorted(tuples)


def test_round_trip_over_the_full_space():
    for t, name in enumerate_strategies():
        assert encode_strategy(name) == t
        assert decode_strategy_name(*t) == name


def test_uniform_grammar_examples():
    assert encode_strategy("DE/pbest/3/exp") == (3, 3, 3, 2)
    assert encode_strategy("DE/rand-to-best/2/arith") == (1, 2, 2, 3)
    assert encode_strategy("DE/best-to-current/4/exp") == (2, 4, 4, 2)


@pytest.mark.parametrize(
    "bad",
    [
        "GA/rand/1/bin",
        "DE/rand/1",
        "DE/rand/0/bin",
        "DE/rand/5/bin",
        "DE/rand/x/bin",
        "DE/median/1/bin",
        "DE/rand-to-median/1/bin",
        "DE/rand/1/uniform",
        "DE/rand/1/bin/extra",
        "DE",
        "",
    ],
)
def test_malformed_names_raise(bad):
    from metade.model import StrategyParseError

    with pytest.raises(StrategyParseError):
        encode_strategy(bad)


def test_hyperconfig_from_strategy():
    cfg = HyperConfig.from_strategy("DE/current-to-pbest/1/bin", F=0.7, CR=0.3)
    assert (cfg.bl, cfg.br, cfg.dn, cfg.cs) == (4, 3, 1, 1)
    assert cfg.directional
    assert cfg.strategy_name == "DE/current-to-pbest/1/bin"
    collapsed = HyperConfig.from_strategy("DE/rand/1/bin", F=0.5, CR=0.9)
    assert not collapsed.directional
