"""Decimal-string encoding of multiprecision numbers for JSON documents."""

from __future__ import annotations

import json

from .context import DEFAULT_CONTEXT, PrecisionContext

SCHEMA_WEAK = "vanishforge.weak/1"
SCHEMA_BASIS = "vanishforge.alpha-basis/1"
SCHEMA_CERT = "vanishforge.certificate/1"
SCHEMA_QEXP = "vanishforge.qexpansion/1"


def encode_real(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> str:
    mp = ctx.mp
    x = mp.mpf(x)
    if x == 0:
        return "0"
    return mp.nstr(x, ctx.digits, strip_zeros=True, min_fixed=-4, max_fixed=6)


def encode_complex(z, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list:
    z = ctx.mp.mpc(z)
    return [encode_real(z.real, ctx), encode_real(z.imag, ctx)]


def decode_complex(pair, ctx: PrecisionContext = DEFAULT_CONTEXT):
    mp = ctx.mp
    if isinstance(pair, (list, tuple)):
        re, im = pair
        return mp.mpc(mp.mpf(str(re)), mp.mpf(str(im)))
    return mp.mpc(mp.mpf(str(pair)))


def dumps(doc: dict) -> str:
    """Deterministic JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def weak_to_json(w, ctx: PrecisionContext = DEFAULT_CONTEXT) -> dict:
    return {"schema": SCHEMA_WEAK, "level": w.level, "beta": [encode_complex(b, ctx) for b in w.beta]}


def weak_from_json(doc: dict, ctx: PrecisionContext = DEFAULT_CONTEXT):
    from .weak import WeakFunction

    N = int(doc["level"])
    return WeakFunction.from_beta(N, [decode_complex(b, ctx) for b in doc["beta"]], ctx)
