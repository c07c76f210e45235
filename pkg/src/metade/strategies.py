"""Naming and enumeration of the parameterized-DE strategy space.

A strategy is the categorical quadruple ``(bl, br, dn, cs)``: left and
right base-vector codes, number of difference pairs, and crossover
operator.  4 x 4 x 4 choices of bases and pairs times 3 crossovers gives
192 distinct variants, each with a canonical ``DE/<base>/<dn>/<cross>``
style name.
"""

from __future__ import annotations

from .model import (
    BASE_BEST,
    BASE_CURRENT,
    BASE_PBEST,
    BASE_RAND,
    CROSS_ARITH,
    CROSS_BIN,
    CROSS_EXP,
    StrategyParseError,
)

_BASE_NAMES = {
    BASE_RAND: "rand",
    BASE_BEST: "best",
    BASE_PBEST: "pbest",
    BASE_CURRENT: "current",
}
_BASE_CODES = {v: k for k, v in _BASE_NAMES.items()}

_CROSS_NAMES = {CROSS_BIN: "bin", CROSS_EXP: "exp", CROSS_ARITH: "arith"}
_CROSS_CODES = {v: k for k, v in _CROSS_NAMES.items()}


def decode_strategy_name(bl: int, br: int, dn: int, cs: int) -> str:
    """Canonical name for a strategy tuple.

    Equal base codes collapse to the single-base form: ``(1, 1, 1, 1)`` is
    ``DE/rand/1/bin``; differing codes yield the directional form, e.g.
    ``(4, 2, 1, 1)`` is ``DE/current-to-best/1/bin``.
    """
    try:
        left = _BASE_NAMES[bl]
        right = _BASE_NAMES[br]
        cross = _CROSS_NAMES[cs]
    except KeyError as exc:
        raise StrategyParseError(f"unknown strategy code {exc.args[0]!r} in {(bl, br, dn, cs)}") from None
    if dn not in (1, 2, 3, 4):
        raise StrategyParseError(f"difference-pair count must be 1..4, got {dn}")
    base = left if bl == br else f"{left}-to-{right}"
    return f"DE/{base}/{dn}/{cross}"


def encode_strategy(name: str) -> tuple[int, int, int, int]:
    """Parse a ``DE/...`` strategy name into its ``(bl, br, dn, cs)`` tuple.

    Accepts the canonical grammar ``DE/<base>[-to-<base>]/<pairs>/<cross>``
    plus the conventional shorthand ``DE/current-to-rand/<pairs>`` (no
    crossover token), which is algebraically the rand-base variant with
    arithmetic recombination and therefore encodes as ``(1, 1, dn, 3)``.
    """
    parts = name.strip().split("/")
    if len(parts) < 3 or parts[0] != "DE":
        raise StrategyParseError(f"strategy name must look like DE/<base>/<pairs>/<cross>: {name!r}")
    base_token, dn_token = parts[1], parts[2]

    try:
        dn = int(dn_token)
    except ValueError:
        raise StrategyParseError(f"difference-pair count is not an integer: {dn_token!r}") from None
    if dn not in (1, 2, 3, 4):
        raise StrategyParseError(f"difference-pair count must be 1..4, got {dn}")

    if len(parts) == 3:
        # Shorthand without a crossover token exists only for current-to-rand.
        if base_token != "current-to-rand":
            raise StrategyParseError(f"missing crossover token in {name!r}")
        return (BASE_RAND, BASE_RAND, dn, CROSS_ARITH)
    if len(parts) != 4:
        raise StrategyParseError(f"too many segments in strategy name {name!r}")

    cross_token = parts[3]
    if cross_token not in _CROSS_CODES:
        raise StrategyParseError(
            f"unknown crossover {cross_token!r}; expected one of {sorted(_CROSS_CODES)}"
        )
    cs = _CROSS_CODES[cross_token]

    if "-to-" in base_token:
        left_token, right_token = base_token.split("-to-", 1)
    else:
        left_token = right_token = base_token
    if left_token not in _BASE_CODES:
        raise StrategyParseError(f"unknown base vector {left_token!r} in {name!r}")
    if right_token not in _BASE_CODES:
        raise StrategyParseError(f"unknown base vector {right_token!r} in {name!r}")
    return (_BASE_CODES[left_token], _BASE_CODES[right_token], dn, cs)


def enumerate_strategies() -> list[tuple[tuple[int, int, int, int], str]]:
    """All 192 strategy tuples with their canonical names, in lexicographic
    order of the tuple."""
    out = []
    for bl in sorted(_BASE_NAMES):
        for br in sorted(_BASE_NAMES):
            for dn in (1, 2, 3, 4):
                for cs in sorted(_CROSS_NAMES):
                    out.append(((bl, br, dn, cs), decode_strategy_name(bl, br, dn, cs)))
    return out
