"""Independent checks with sympy: ideal membership and normal forms."""

import sympy as sp


def symbols(ctx):
    return sp.symbols(list(ctx.names)) if ctx.names else ()


def to_sympy(ctx, x):
    names = symbols(ctx)
    env = {str(s): s for s in names}
    return sp.sympify(ctx.to_str(x).replace("^", "**"), locals=env)


def vanishes(ctx, x):
    """True if x is zero modulo the relations, decided by sympy."""
    expr = sp.expand(to_sympy(ctx, x))
    if not ctx.names:
        return expr == 0
    gens = symbols(ctx)
    rels = [sp.sympify(r.replace("^", "**"), locals={str(s): s for s in gens})
            for r in ctx.descriptor.relations]
    if not rels:
        return expr == 0
    G = sp.groebner(rels, *gens, order="grevlex")
    _, rem = sp.reduced(expr, list(G.exprs), *gens, order="grevlex")
    return sp.expand(rem) == 0
