"""Optional post-hoc isomorphism filtering of labeled instances.

Enumeration is over labeled instances (only the monotone-presence prefix is
broken by construction).  For small bounds a canonical key can be computed
by minimizing the instance serialization over all per-sig atom
permutations; instances sharing a key are isomorphic.
"""

from __future__ import annotations

import itertools
import json

from .bounds import Bounds
from .instance import Instance


def canonical_key(inst: Instance, bounds: Bounds) -> str:
    """Minimal serialization over atom permutations within each top sig."""
    per_sig_perms = []
    for s in bounds.top_order:
        atoms = bounds.atoms[s]
        per_sig_perms.append([dict(zip(atoms, p))
                              for p in itertools.permutations(atoms)])
    best = None
    for combo in itertools.product(*per_sig_perms):
        mapping: dict[str, str] = {}
        for m in combo:
            mapping.update(m)
        renamed = {
            "sigs": {k: sorted(mapping[a] for a in v)
                     for k, v in inst.sigs.items()},
            "fields": {k: sorted(tuple(mapping[a] for a in t) for t in v)
                       for k, v in inst.fields.items()},
        }
        key = json.dumps(renamed, sort_keys=True)
        if best is None or key < best:
            best = key
    return best or ""


def filter_isomorphic(instances: list[Instance], bounds: Bounds) -> list[Instance]:
    """Keep the first representative of each isomorphism class, in order."""
    seen: set[str] = set()
    out = []
    for inst in instances:
        key = canonical_key(inst, bounds)
        if key not in seen:
            seen.add(key)
            out.append(inst)
    return out
