"""The bundled benchmark corpus and ground-truth generators for fresh string examples."""
from __future__ import annotations

import random
from pathlib import Path
from typing import Callable

from .dsl import Example, format_literal, Sort

BENCHMARKS = Path(__file__).parent / "benchmarks"
SMOKE = BENCHMARKS / "smoke"
HOLDOUT = BENCHMARKS / "holdout"

STRING_TASKS = ("remove-angles", "remove-angles-short", "pick-date", "phone")


def benchmark_path(name: str) -> Path:
    for sub in ("smoke", "extra"):
        path = BENCHMARKS / sub / f"{name}.sl"
        if path.exists():
            return path
    raise FileNotFoundError(name)


def all_benchmarks() -> list[Path]:
    return sorted(BENCHMARKS.rglob("*.sl"), key=lambda p: p.name)


def holdout_path(name: str) -> Path:
    return HOLDOUT / f"{name}.holdout"


_WORDS = ["a", "b", "x", "open", "close", "to", "and", "number", "string", "4", "0", "tag", "Hi"]


def _angled_text(rng: random.Random, max_open: int, max_close: int) -> tuple[str, str]:
    words = [rng.choice(_WORDS) for _ in range(rng.randint(2, 6))]
    marks = ["<"] * rng.randint(0, max_open) + [">"] * rng.randint(0, max_close)
    for m in marks:
        i = rng.randrange(len(words))
        words[i] = m + words[i] if rng.random() < 0.5 else words[i] + m
    text = " ".join(words)
    return text, text.replace("<", "").replace(">", "")


def _remove_angles(rng: random.Random) -> Example:
    # the training examples never contain more than three of either bracket
    text, out = _angled_text(rng, 3, 3)
    return Example({"arg": text}, out)


def _remove_angles_short(rng: random.Random) -> Example:
    # at most two '<' and one '>', as in the two training examples
    text, out = _angled_text(rng, 2, 1)
    return Example({"arg": text}, out)


def _date(rng: random.Random, wide: bool) -> str:
    m, d = rng.randint(1, 12), rng.randint(1, 28)
    y = rng.randint(1990, 2030)
    if wide:
        return f"{m:02d}/{d:02d}/{y}"
    return f"{m:02d}/{d:02d}/{y % 100:02d}"


def _pick_date(rng: random.Random) -> Example:
    # both dates of a range share one format, as in the training examples
    wide = rng.random() < 0.5
    first, second = _date(rng, wide), _date(rng, wide)
    n = rng.randint(1, 2)
    return Example({"s": f"{first}-{second}", "n": n}, first if n == 1 else second)


def _phone(rng: random.Random) -> Example:
    cc = str(rng.randint(1, 999))
    groups = [f"{rng.randint(0, 999):03d}" for _ in range(3)]
    return Example({"arg": f"+{cc} {'-'.join(groups)}"}, groups[0])


GROUND_TRUTH: dict[str, Callable[[random.Random], Example]] = {
    "remove-angles": _remove_angles,
    "remove-angles-short": _remove_angles_short,
    "pick-date": _pick_date,
    "phone": _phone,
}


def fresh_examples(name: str, count: int = 20, seed: int = 0) -> list[Example]:
    rng = random.Random(f"{name}/{seed}")
    return [GROUND_TRUTH[name](rng) for _ in range(count)]


def _sort_of(value: object) -> Sort:
    return Sort.INT if isinstance(value, int) else Sort.STRING


def format_examples(examples: list[Example], fname: str = "f") -> str:
    lines = []
    for e in examples:
        args = " ".join(format_literal(v, _sort_of(v)) for v in e.inputs.values())
        lines.append(f"(constraint (= ({fname} {args}) {format_literal(e.output, _sort_of(e.output))}))")
    return "\n".join(lines) + "\n"


def write_holdouts(count: int = 20, seed: int = 0) -> None:
    HOLDOUT.mkdir(exist_ok=True)
    for name in STRING_TASKS:
        holdout_path(name).write_text(format_examples(fresh_examples(name, count, seed)),
                                      encoding="utf-8")


if __name__ == "__main__":
    write_holdouts()
