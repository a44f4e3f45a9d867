#!/usr/bin/env python3
"""Generate example input files for the CLI in ./example_data/."""

import json
from pathlib import Path

import numpy as np

from wignerlift.hilbert import random_unitary
from wignerlift.lift import lift_query_vectors
from wignerlift.projective import TabulatedOracle, canonicalize
from wignerlift.serialize import (
    encode_composition,
    encode_matrix,
    encode_tabulated_oracle,
)
from wignerlift.tensor import canonical_tensor, rotated_tensor


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "example_data"
    out.mkdir(exist_ok=True)

    def dump(name, obj):
        path = out / name
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2)
            fh.write("\n")
        print(f"wrote {path}")

    dump("canonical_2x3.json", encode_composition(canonical_tensor(2, 3)))
    dump("rotated_2x3.json",
         encode_composition(rotated_tensor(2, 3, random_unitary(6, 3))))

    u = random_unitary(3, 5)
    dump("unitary_oracle.json", {"matrix": encode_matrix(u)})
    dump("conjugating_oracle.json",
         {"matrix": encode_matrix(u), "conjugate_input": True})

    rng = np.random.default_rng(0)
    e = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    e /= np.linalg.norm(e, axis=0, keepdims=True)
    dump("not_preserving.json", {"matrix": encode_matrix(u + 0.01 * e)})

    # Tabulated form of the same unitary oracle, answering exactly the rays
    # the lift queries.
    pairs = [(q, (u @ canonicalize(q).rep)) for q in lift_query_vectors(3)]
    dump("tabulated_oracle.json",
         encode_tabulated_oracle(TabulatedOracle(3, 3, pairs)))


if __name__ == "__main__":
    main()
