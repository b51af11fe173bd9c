#!/usr/bin/env python3
"""Walk through the whodunit example end to end.

Five atoms: p (Ann did it), q (Bob did it), r (the revolver was the
weapon), s (the dagger was), t (the crime was at ten).  Four live
possibilities survive the detective's evidence.  The script shows
which disjunctions and conditionals the context supports, and that
the pair of conditionals p->(r->t), q->(s->t) together with p|q does
NOT let you assert (r->t)|(s->t): the search finds the two-world
counter-context.
"""
import sys

from lad.contexts import DeniabilityVariant
from lad.corpus import MURDER_CONTEXT
from lad.contexts import format_context, parse_context
from lad.semantics import asserts, countermodel, denies
from lad.syntax import format_formula, parse

CLAIMS = [
    "p \\/ q",
    "p -> (r -> t)",
    "q -> (s -> t)",
    "(r -> t) | (s -> t)",
    "(r \\/ s) -> t",
    "<>p & <>q",
]


def main() -> int:
    ctx = parse_context(MURDER_CONTEXT)
    variant = DeniabilityVariant.GAUKER
    print("# the context")
    sys.stdout.write(format_context(ctx))
    print()
    print("# claims at that context")
    for text in CLAIMS:
        phi = parse(text)
        a = asserts(ctx, phi, variant)
        d = denies(ctx, phi, variant)
        print(f"{format_formula(phi):28} asserted={str(a).lower():5} denied={str(d).lower()}")
    print()
    print("# the failed inference")
    premises = [parse(t) for t in CLAIMS[:3]]
    conclusion = parse(CLAIMS[3])
    cm = countermodel(premises, conclusion, variant, atom_bound=5)
    if cm is None:
        print("valid (unexpected)")
        return 1
    print("premises do not entail the conclusion; counter-context:")
    sys.stdout.write(format_context(cm))
    return 0


if __name__ == "__main__":
    sys.exit(main())
