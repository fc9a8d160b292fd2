"""Shared generators and literal set-builder oracles for rough approximations.

The oracles here deliberately stay brute-force double loops over the
universe so they remain independent of the library's vectorized paths.
"""

import csv
import io
import random

from granulens import load_table, discretize, GranulationScheme


def random_table(rng: random.Random, max_n=32, max_attrs=5, max_classes=4,
                 missing_prob=0.1):
    """Random small table via the CSV loader; mixes numeric and categorical."""
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_attrs)
    k = rng.randint(1, max_classes)
    names = [f"c{i}" for i in range(m)]
    kinds = [rng.choice(["numeric", "categorical"]) for _ in range(m)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names + ["d"])
    for _ in range(n):
        row = []
        for kind in kinds:
            if rng.random() < missing_prob:
                row.append("")
            elif kind == "numeric":
                row.append(f"{rng.uniform(-5, 5):.3f}")
            else:
                row.append(rng.choice("uvwxyz"[:rng.randint(2, 4)]))
        row.append(f"k{rng.randrange(k)}")
        writer.writerow(row)
    # force categorical where every generated cell happened to parse numeric
    hints = {name: kind for name, kind in zip(names, kinds)}
    return load_table(buf.getvalue(), "d", schema_hints=hints)


def random_view(rng: random.Random, table, max_bits=4):
    numeric = [a.name for a in table.condition_attributes if a.kind == "numeric"]
    scheme = GranulationScheme({name: rng.randint(0, max_bits) for name in numeric})
    return discretize(table, scheme)


def random_attr_subset(rng: random.Random, table, nonempty=True):
    names = [a.name for a in table.condition_attributes]
    lo = 1 if (nonempty and names) else 0
    size = rng.randint(lo, len(names))
    return rng.sample(names, size)


def code_tuples(view, attrs):
    return [tuple(int(view.codes_for(a)[i]) for a in attrs)
            for i in range(view.source.n)]


def brute_equivalence_class(tuples, x):
    return {y for y in range(len(tuples)) if tuples[y] == tuples[x]}


def brute_lower(tuples, concept):
    """{x in U | [x] subseteq X}, literally."""
    return {x for x in range(len(tuples))
            if brute_equivalence_class(tuples, x) <= concept}


def brute_upper(tuples, concept):
    """{x in U | [x] intersects X}, literally."""
    return {x for x in range(len(tuples))
            if brute_equivalence_class(tuples, x) & concept}


def brute_regions(tuples, labels):
    """Per-class lower/upper, positive region, and overall boundary by brute force."""
    universe = set(range(len(tuples)))
    classes = []
    for t in labels:
        if t not in classes:
            classes.append(t)
    per_class = {}
    for cls in classes:
        concept = {i for i, t in enumerate(labels) if t == cls}
        lo, up = brute_lower(tuples, concept), brute_upper(tuples, concept)
        per_class[cls] = (lo, up, up - lo)
    positive = set().union(*(lo for lo, _, _ in per_class.values()))
    boundary = set().union(*(bn for _, _, bn in per_class.values()))
    return per_class, positive, boundary, universe


def run_csv(rows, run_id=None, meta=None, header=("object_index", "predicted")):
    buf = io.StringIO()
    if run_id is not None:
        directive = f"# run_id={run_id}"
        if meta is not None:
            directive += f" meta={meta}"
        buf.write(directive + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()
