"""Randomized search over a declared IFS family.

A family fixes the field, the expansion, a generator set for symmetries,
a translation box and a map-count range.  The search loop spends half of
each generation on fresh random specs and half on mutations of the
current best survivors; candidates are analyzed independently (worker
pool optional) and merged back in candidate order, so a (config, seed)
pair fully determines the result regardless of worker count.

Per-candidate randomness comes from PCG64 streams spawned off the config
seed by candidate index, which is what makes mutation and sampling
decisions independent of scheduling.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .fields import FieldSpec, make_field
from .linalg import Vec2, format_rational, parse_rational
from .model import (
    IfsSpec,
    MapSpec,
    SchemaError,
    Symmetry,
    canonical_spec_json,
    spec_id,
    validate,
)
from .neighbors import DEFAULT_MAX_CANDIDATES, DEFAULT_MAX_TYPES
from .records import ExampleRecord, analyze, canonical_record_json, record_from_json
from .topology import ATTRACTOR_CLASSES

RNG_NAME = "pcg64"
GENERATION_SIZE = 64
TOP_PARENTS = 32
_RESAMPLE_LIMIT = 100


@dataclass(frozen=True)
class Filters:
    connected: bool | None = None
    min_types: int | None = None
    max_types: int | None = None
    min_fli: int | None = None
    max_fli: int | None = None
    attractor_class: str | None = None

    def is_empty(self) -> bool:
        return all(
            getattr(self, name) is None
            for name in (
                "connected",
                "min_types",
                "max_types",
                "min_fli",
                "max_fli",
                "attractor_class",
            )
        )


@dataclass(frozen=True)
class SearchConfig:
    field: FieldSpec
    b: Fraction
    c: Fraction
    generators: tuple[Symmetry, ...]
    m_range: tuple[int, int]
    translation_box: int
    symmetry_word_length: int
    budget: int
    seed: int
    max_types: int = DEFAULT_MAX_TYPES
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    filters: Filters = dc_field(default_factory=Filters)
    rng_name: str = RNG_NAME

    def expansion_det(self) -> Fraction:
        a = self.field.a
        return self.b * self.b + self.c * self.c - a * self.b * self.c

    def effective_generators(self) -> tuple[Symmetry, ...]:
        """Input generators closed under negation, point reflection included."""
        out: list[Symmetry] = []
        seen: set[tuple] = set()

        def push(sym: Symmetry) -> None:
            key = (sym.x, sym.y, sym.reflected)
            if key not in seen:
                seen.add(key)
                out.append(sym)

        for g in self.generators:
            push(g)
            push(g.negate())
        push(Symmetry.point_reflection())
        return tuple(out)


def _validate_config(config: SearchConfig) -> None:
    det = config.expansion_det()
    if det <= 1:
        raise SchemaError(f"expansion is not expanding (det M = {det})")
    lo, hi = config.m_range
    if not (2 <= lo <= hi):
        raise SchemaError(f"bad map count range ({lo}, {hi})")
    if Fraction(hi) > det:
        raise SchemaError(f"map count range exceeds det M = {det}")
    if config.translation_box < 1:
        raise SchemaError("translation box must be at least 1")
    if config.symmetry_word_length < 0:
        raise SchemaError("symmetry word length must be non-negative")
    if config.budget < 0:
        raise SchemaError("budget must be non-negative")
    if not 0 <= config.seed < 2**64:
        raise SchemaError("seed must fit in 64 bits")
    if config.max_types < 1 or config.max_candidates < 1:
        raise SchemaError("caps must be positive")
    if config.rng_name != RNG_NAME:
        raise SchemaError(f"unsupported rng {config.rng_name!r}")
    a = config.field.a
    for idx, g in enumerate(config.generators):
        norm = g.x * g.x + g.y * g.y - a * g.x * g.y
        if norm != 1:
            raise SchemaError(f"generator {idx}: not a unit rotation (norm {norm})")
    f = config.filters
    for name in ("min_types", "max_types", "min_fli", "max_fli"):
        value = getattr(f, name)
        if value is not None and value < 0:
            raise SchemaError(f"filter {name} must be non-negative")
    if f.attractor_class is not None and f.attractor_class not in ATTRACTOR_CLASSES:
        raise SchemaError(f"unknown attractor class {f.attractor_class!r}")


def make_config(
    a,
    b,
    c,
    generators: Iterable[tuple] = (),
    m_range: tuple[int, int] = (2, 2),
    translation_box: int = 1,
    symmetry_word_length: int = 1,
    budget: int = 0,
    seed: int = 0,
    **kwargs,
) -> SearchConfig:
    gens = tuple(
        Symmetry(Fraction(x), Fraction(y), bool(r)) for x, y, r in generators
    )
    config = SearchConfig(
        field=make_field(Fraction(a)),
        b=Fraction(b),
        c=Fraction(c),
        generators=gens,
        m_range=m_range,
        translation_box=translation_box,
        symmetry_word_length=symmetry_word_length,
        budget=budget,
        seed=seed,
        **kwargs,
    )
    _validate_config(config)
    return config


# --- JSON -----------------------------------------------------------

_FILTER_KEYS = {
    "connected": bool,
    "min_types": int,
    "max_types": int,
    "min_fli": int,
    "max_fli": int,
    "attractor_class": str,
}
_CONFIG_KEYS = {
    "field",
    "expansion",
    "generators",
    "m_range",
    "translation_box",
    "symmetry_word_length",
    "caps",
    "budget",
    "seed",
    "filters",
    "rng",
}
_REQUIRED_CONFIG_KEYS = _CONFIG_KEYS - {"caps", "filters", "rng"}


def _plain_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what}: expected an integer")
    return value


def _rational(value, what: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise SchemaError(f"{what}: {exc}") from None


def config_from_json(data) -> SearchConfig:
    if not isinstance(data, dict):
        raise SchemaError("search config: expected an object")
    missing = _REQUIRED_CONFIG_KEYS - data.keys()
    if missing:
        raise SchemaError(f"search config: missing keys {sorted(missing)}")
    unknown = data.keys() - _CONFIG_KEYS
    if unknown:
        raise SchemaError(f"search config: unknown keys {sorted(unknown)}")

    fld = data["field"]
    if not isinstance(fld, dict) or set(fld) != {"a"}:
        raise SchemaError("search config: field must be an object with key a")
    exp = data["expansion"]
    if not isinstance(exp, dict) or set(exp) != {"b", "c"}:
        raise SchemaError("search config: expansion must have keys b, c")

    gens_raw = data["generators"]
    if not isinstance(gens_raw, list):
        raise SchemaError("search config: generators must be a list")
    gens = []
    for idx, g in enumerate(gens_raw):
        if not isinstance(g, dict) or set(g) != {"x", "y", "reflected"}:
            raise SchemaError(f"generator {idx}: expected keys x, y, reflected")
        if not isinstance(g["reflected"], bool):
            raise SchemaError(f"generator {idx}: reflected must be a boolean")
        gens.append(
            (
                _rational(g["x"], f"generator {idx}: x"),
                _rational(g["y"], f"generator {idx}: y"),
                g["reflected"],
            )
        )

    mr = data["m_range"]
    if not isinstance(mr, list) or len(mr) != 2:
        raise SchemaError("search config: m_range must be a pair")
    m_range = (_plain_int(mr[0], "m_range"), _plain_int(mr[1], "m_range"))

    caps = data.get("caps", {})
    if not isinstance(caps, dict) or not set(caps) <= {"max_types", "max_candidates"}:
        raise SchemaError("search config: caps may have keys max_types, max_candidates")
    max_types = _plain_int(caps.get("max_types", DEFAULT_MAX_TYPES), "caps.max_types")
    max_candidates = _plain_int(
        caps.get("max_candidates", DEFAULT_MAX_CANDIDATES), "caps.max_candidates"
    )

    filt_raw = data.get("filters", {})
    if not isinstance(filt_raw, dict):
        raise SchemaError("search config: filters must be an object")
    unknown = filt_raw.keys() - _FILTER_KEYS.keys()
    if unknown:
        raise SchemaError(f"search config: unknown filter keys {sorted(unknown)}")
    filt_kwargs = {}
    for key, kind in _FILTER_KEYS.items():
        if key not in filt_raw:
            continue
        value = filt_raw[key]
        if kind is bool:
            if not isinstance(value, bool):
                raise SchemaError(f"filter {key}: expected a boolean")
        elif kind is int:
            value = _plain_int(value, f"filter {key}")
        elif not isinstance(value, str):
            raise SchemaError(f"filter {key}: expected a string")
        filt_kwargs[key] = value

    rng_name = data.get("rng", RNG_NAME)
    if not isinstance(rng_name, str):
        raise SchemaError("search config: rng must be a string")

    config = SearchConfig(
        field=make_field(_rational(fld["a"], "field a")),
        b=_rational(exp["b"], "expansion b"),
        c=_rational(exp["c"], "expansion c"),
        generators=tuple(Symmetry(x, y, r) for x, y, r in gens),
        m_range=m_range,
        translation_box=_plain_int(data["translation_box"], "translation_box"),
        symmetry_word_length=_plain_int(
            data["symmetry_word_length"], "symmetry_word_length"
        ),
        budget=_plain_int(data["budget"], "budget"),
        seed=_plain_int(data["seed"], "seed"),
        max_types=max_types,
        max_candidates=max_candidates,
        filters=Filters(**filt_kwargs),
        rng_name=rng_name,
    )
    _validate_config(config)
    return config


def config_to_json(config: SearchConfig) -> dict:
    filters = {}
    for key in _FILTER_KEYS:
        value = getattr(config.filters, key)
        if value is not None:
            filters[key] = value
    return {
        "field": {"a": format_rational(config.field.a)},
        "expansion": {"b": format_rational(config.b), "c": format_rational(config.c)},
        "generators": [
            {
                "x": format_rational(g.x),
                "y": format_rational(g.y),
                "reflected": g.reflected,
            }
            for g in config.generators
        ],
        "m_range": [config.m_range[0], config.m_range[1]],
        "translation_box": config.translation_box,
        "symmetry_word_length": config.symmetry_word_length,
        "caps": {
            "max_types": config.max_types,
            "max_candidates": config.max_candidates,
        },
        "budget": config.budget,
        "seed": config.seed,
        "filters": filters,
        "rng": config.rng_name,
    }


# --- sampling -------------------------------------------------------


def _candidate_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
    )


def sample_symmetry(
    rng: np.random.Generator, generators: Sequence[Symmetry], word_length: int, field: FieldSpec
) -> Symmetry:
    length = int(rng.integers(0, word_length + 1))
    acc = Symmetry.identity()
    for _ in range(length):
        acc = acc.compose(generators[int(rng.integers(0, len(generators)))], field)
    if int(rng.integers(0, 2)) == 1:
        acc = acc.negate()
    return acc


def _map_key(spec_map: MapSpec) -> tuple:
    return (
        spec_map.sym.x,
        spec_map.sym.y,
        spec_map.sym.reflected,
        spec_map.t.x,
        spec_map.t.y,
    )


def _sample_map(rng: np.random.Generator, config: SearchConfig, gens) -> MapSpec:
    sym = sample_symmetry(rng, gens, config.symmetry_word_length, config.field)
    box = config.translation_box
    tx = int(rng.integers(-box, box + 1))
    ty = int(rng.integers(-box, box + 1))
    return MapSpec(sym, _int_vec(tx, ty))


def _int_vec(x: int, y: int) -> Vec2:
    return Vec2(Fraction(x), Fraction(y))


def random_spec(config: SearchConfig, rng: np.random.Generator) -> IfsSpec:
    gens = config.effective_generators()
    lo, hi = config.m_range
    for _ in range(_RESAMPLE_LIMIT):
        m = int(rng.integers(lo, hi + 1))
        maps: list[MapSpec] = []
        keys: set[tuple] = set()
        ok = True
        for _ in range(m):
            placed = False
            for _ in range(_RESAMPLE_LIMIT):
                cand = _sample_map(rng, config, gens)
                key = _map_key(cand)
                if key not in keys:
                    keys.add(key)
                    maps.append(cand)
                    placed = True
                    break
            if not placed:
                ok = False
                break
        if not ok:
            continue
        spec = IfsSpec(config.field, config.b, config.c, tuple(maps))
        if not validate(spec):
            return spec
    raise ValueError("family exhausted")


_MOVES = ("replace_symmetry", "shift_translation", "add_map", "remove_map")
_UNIT_SHIFTS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def mutate(spec: IfsSpec, rng: np.random.Generator, config: SearchConfig) -> IfsSpec:
    gens = config.effective_generators()
    lo, hi = config.m_range
    box = config.translation_box
    for _ in range(_RESAMPLE_LIMIT):
        move = _MOVES[int(rng.integers(0, len(_MOVES)))]
        maps = list(spec.maps)
        m = len(maps)
        if move == "replace_symmetry":
            at = int(rng.integers(0, m))
            sym = sample_symmetry(rng, gens, config.symmetry_word_length, config.field)
            maps[at] = MapSpec(sym, maps[at].t)
        elif move == "shift_translation":
            at = int(rng.integers(0, m))
            dx, dy = _UNIT_SHIFTS[int(rng.integers(0, len(_UNIT_SHIFTS)))]
            tx = maps[at].t.x + dx
            ty = maps[at].t.y + dy
            if abs(tx) > box or abs(ty) > box:
                continue
            maps[at] = MapSpec(maps[at].sym, _int_vec(int(tx), int(ty)))
        elif move == "add_map":
            if m >= hi:
                continue
            maps.append(_sample_map(rng, config, gens))
        else:
            if m <= lo:
                continue
            at = int(rng.integers(0, m))
            del maps[at]
        keys = {_map_key(mp) for mp in maps}
        if len(keys) != len(maps):
            continue
        child = IfsSpec(spec.field, spec.b, spec.c, tuple(maps))
        if not validate(child):
            return child
    raise ValueError("stuck")


# --- filtering and ranking ------------------------------------------


def satisfies_filters(record: ExampleRecord, filters: Filters) -> bool:
    """Whether a record is collectible under the filter set.

    Only graph and empty outcomes carry the reports the predicates read;
    anything else never qualifies.
    """
    if record.outcome.kind not in ("graph", "empty"):
        return False
    count = record.neighbor_count
    fli = record.fli
    topo = record.topology
    f = filters
    if f.connected is not None and topo.connected != f.connected:
        return False
    if f.min_types is not None and count < f.min_types:
        return False
    if f.max_types is not None and count > f.max_types:
        return False
    if f.min_fli is not None and fli < f.min_fli:
        return False
    if f.max_fli is not None and fli > f.max_fli:
        return False
    if f.attractor_class is not None and topo.classification != f.attractor_class:
        return False
    return True


def rank(records: Iterable[ExampleRecord], filters: Filters | None = None) -> list[ExampleRecord]:
    """Stable order: filter hits first, small graphs first, rich intersections first."""
    filters = filters or Filters()

    def key(rec: ExampleRecord):
        hit = 0 if satisfies_filters(rec, filters) else 1
        count = rec.neighbor_count
        count_key = count if count is not None else 10**9
        fli = rec.fli if rec.fli is not None else -1
        return (hit, count_key, -fli, rec.id)

    return sorted(records, key=key)


# --- the search loop ------------------------------------------------


@dataclass
class SearchStats:
    tried: int = 0
    analyzed: int = 0
    duplicates: int = 0
    found: int = 0
    compositions: int = 0
    pruned_far: int = 0
    elapsed: float = 0.0

    @property
    def candidates_per_second(self) -> float:
        return self.tried / self.elapsed if self.elapsed > 0 else 0.0

    @property
    def prune_ratio(self) -> float:
        return self.pruned_far / self.compositions if self.compositions else 0.0

    def snapshot(self) -> dict:
        return {
            "tried": self.tried,
            "analyzed": self.analyzed,
            "duplicates": self.duplicates,
            "found": self.found,
            "compositions": self.compositions,
            "pruned_far": self.pruned_far,
            "prune_ratio": self.prune_ratio,
            "elapsed": self.elapsed,
            "candidates_per_second": self.candidates_per_second,
        }


def _analyze_payload(payload: tuple[str, int, int]) -> str:
    from .model import parse_spec_text

    spec_json, max_types, max_candidates = payload
    record = analyze(
        parse_spec_text(spec_json),
        max_types=max_types,
        max_candidates=max_candidates,
    )
    return canonical_record_json(record)


def run_search(
    config: SearchConfig,
    *,
    max_workers: int | None = None,
    progress: Callable[[SearchStats], None] | None = None,
    should_stop: Callable[[], bool] | None = None,
    stats: SearchStats | None = None,
) -> list[ExampleRecord]:
    """Run the full budget (or until should_stop), return ranked filter hits."""
    _validate_config(config)
    stats = stats if stats is not None else SearchStats()
    started = time.perf_counter()
    seen: dict[str, ExampleRecord] = {}
    kept: dict[str, ExampleRecord] = {}
    parents: list[ExampleRecord] = []
    index = 0

    pool = None
    try:
        if max_workers is not None and max_workers > 1:
            pool = ProcessPoolExecutor(max_workers=max_workers)
        while index < config.budget:
            if should_stop is not None and should_stop():
                break
            chunk = min(GENERATION_SIZE, config.budget - index)
            batch: list[tuple[int, IfsSpec]] = []
            for off in range(chunk):
                i = index + off
                rng = _candidate_rng(config.seed, i)
                if parents and i % 2 == 1:
                    parent = parents[int(rng.integers(0, len(parents)))]
                    try:
                        spec = mutate(parent.spec, rng, config)
                    except ValueError:
                        spec = random_spec(config, rng)
                else:
                    spec = random_spec(config, rng)
                stats.tried += 1
                batch.append((i, spec))

            novel: dict[str, IfsSpec] = {}
            ids = []
            for _, spec in batch:
                sid = spec_id(spec)
                ids.append(sid)
                if sid not in seen and sid not in novel:
                    novel[sid] = spec

            fresh: dict[str, ExampleRecord] = {}
            if pool is not None and len(novel) > 1:
                order = list(novel.items())
                payloads = [
                    (canonical_spec_json(spec), config.max_types, config.max_candidates)
                    for _, spec in order
                ]
                for (sid, _), text in zip(order, pool.map(_analyze_payload, payloads)):
                    fresh[sid] = record_from_json(json.loads(text))
            else:
                for sid, spec in novel.items():
                    fresh[sid] = analyze(
                        spec,
                        max_types=config.max_types,
                        max_candidates=config.max_candidates,
                    )

            for (i, spec), sid in zip(batch, ids):
                if sid in seen:
                    stats.duplicates += 1
                    record = seen[sid]
                else:
                    record = fresh[sid]
                    seen[sid] = record
                    stats.analyzed += 1
                    out_stats = record.outcome.stats
                    stats.compositions += out_stats.compositions
                    stats.pruned_far += out_stats.pruned_far
                if sid not in kept and satisfies_filters(record, config.filters):
                    kept[sid] = record
                    stats.found += 1

            survivors = rank(kept.values())
            parents = survivors[:TOP_PARENTS]
            index += chunk
            stats.elapsed = time.perf_counter() - started
            if progress is not None:
                progress(stats)
    finally:
        if pool is not None:
            pool.shutdown()

    stats.elapsed = time.perf_counter() - started
    return rank(kept.values())


def family_from_spec(spec: IfsSpec, *, seed: int, budget: int = 1) -> SearchConfig:
    """Smallest sensible family around an existing spec, for one-shot mutation."""
    det = spec.expansion_det()
    hi = max(2, int(det))
    if Fraction(hi) > det:
        hi -= 1
    hi = max(2, hi, spec.m)
    box = 1
    for mp in spec.maps:
        box = max(box, abs(int(mp.t.x)), abs(int(mp.t.y)))
    box += 1
    gens: list[Symmetry] = []
    seen_keys: set[tuple] = set()
    for mp in spec.maps:
        key = (mp.sym.x, mp.sym.y, mp.sym.reflected)
        if key not in seen_keys:
            seen_keys.add(key)
            gens.append(mp.sym)
    config = SearchConfig(
        field=spec.field,
        b=spec.b,
        c=spec.c,
        generators=tuple(gens),
        m_range=(2, hi),
        translation_box=box,
        symmetry_word_length=2,
        budget=budget,
        seed=seed,
    )
    _validate_config(config)
    return config
