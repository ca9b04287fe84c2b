use combproof::syntax::Formula;

/// The eight equations under which formulas share a graph, for one triple.
/// `x` and `y` may occur free in `b` but not in `a`.
pub fn laws(a: &Formula, b: &Formula, c: &Formula) -> Vec<(&'static str, Formula, Formula)> {
    let (and, or) = (Formula::and, Formula::or);
    let (ex, all) = (Formula::exists, Formula::forall);
    vec![
        ("and-comm", and(a.clone(), b.clone()), and(b.clone(), a.clone())),
        ("and-assoc", and(a.clone(), and(b.clone(), c.clone())), and(and(a.clone(), b.clone()), c.clone())),
        ("ex-swap", ex("x", ex("y", b.clone())), ex("y", ex("x", b.clone()))),
        ("ex-extrude", and(a.clone(), ex("x", b.clone())), ex("x", and(a.clone(), b.clone()))),
        ("or-comm", or(a.clone(), b.clone()), or(b.clone(), a.clone())),
        ("or-assoc", or(a.clone(), or(b.clone(), c.clone())), or(or(a.clone(), b.clone()), c.clone())),
        ("all-swap", all("x", all("y", b.clone())), all("y", all("x", b.clone()))),
        ("all-extrude", or(a.clone(), all("x", b.clone())), all("x", or(a.clone(), b.clone()))),
    ]
}
