import dataclasses
import json
import math
from collections import Counter
from fractions import Fraction
from typing import Callable, List

import numpy as np

from padiz.padic_core import PadicNumber, render


def to_json_safe(obj):
    """ Convert report payloads (p-adic numbers, fractions, numpy scalars, dataclasses) into plain JSON types """
    if isinstance(obj, PadicNumber):
        return {'valuation': None if obj.is_zero else obj.valuation,
                'unit': str(obj.unit),
                'precision': obj.precision,
                'digits': render(obj)}
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return to_json_safe(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return to_json_safe(float(obj))
    if isinstance(obj, float) and (math.isinf(obj) or math.isnan(obj)):
        return str(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: to_json_safe(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        kind = getattr(obj, 'kind', None)
        if kind is not None:
            out['kind'] = kind
        return out
    if isinstance(obj, dict):
        return {str(k): to_json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_json_safe(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """ Deterministic JSON """
    return json.dumps(to_json_safe(obj), sort_keys=True, indent=2)


def tag_examples(entries: List[dict], tag_of: Callable[[dict], str], num: int = 2) -> List[dict]:
    """ The first num sampled entries of each tag, in sampling order """
    seen = Counter()
    kept = []
    for entry in entries:
        tag = tag_of(entry)
        seen[tag] += 1
        if seen[tag] <= num:
            kept.append(entry)
    return kept
