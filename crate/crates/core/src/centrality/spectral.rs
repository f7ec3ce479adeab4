use super::pagerank::{Convergence, Step};
use super::{
    check_edges, check_nonempty, norm1, norm2, product, sae, scale, transpose_product, CentralityKind,
    CentralityVector, IterOptions, Norm,
};
use crate::error::{NestError, Result};
use crate::graph::Graph;

pub const RADIUS_ESTIMATE_STEPS: usize = 200;

/// Directed graphs without cycles have a nilpotent adjacency matrix.
pub(crate) fn is_acyclic(graph: &Graph) -> bool {
    if !graph.is_directed() {
        return graph.m() == 0;
    }
    let mut indeg = graph.in_degrees();
    let mut stack: Vec<usize> = (0..graph.n()).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = stack.pop() {
        seen += 1;
        for &v in graph.out_neighbors(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                stack.push(v);
            }
        }
    }
    seen == graph.n()
}

/// Estimate of the largest eigenvalue modulus of `A`: the 1-norm growth ratio
/// after [`RADIUS_ESTIMATE_STEPS`] steps on `Aᵀ + I`, minus one. The shift
/// keeps the ratio from oscillating on periodic graphs. Exactly 0 for
/// acyclic graphs.
pub fn spectral_radius_estimate(graph: &Graph) -> f64 {
    if graph.n() == 0 || is_acyclic(graph) {
        return 0.0;
    }
    let n = graph.n();
    let mut x = vec![1.0 / n as f64; n];
    let mut ratio = 1.0;
    for _ in 0..RADIUS_ESTIMATE_STEPS {
        let mut y = transpose_product(graph, &x);
        y.iter_mut().zip(&x).for_each(|(a, b)| *a += b);
        ratio = norm1(&y) / norm1(&x);
        let norm = norm1(&y);
        scale(&mut y, 1.0 / norm);
        x = y;
    }
    (ratio - 1.0).max(0.0)
}

/// Eigenvector centrality: the normalized limit of `(Aᵀ)^i 1`, averaged over
/// `i` when the dominant eigenvalue is not unique in modulus.
///
/// Computed by power iteration on `Aᵀ + I`. The shift leaves the eigenvectors
/// alone and makes the dominant eigenvalue strictly dominant, so the plain
/// iterates converge to the same vector the running average would, only
/// geometrically fast. Output has unit 2-norm.
pub fn eigenvector_centrality(graph: &Graph, opts: &IterOptions) -> Result<CentralityVector> {
    check_edges(graph)?;
    if is_acyclic(graph) {
        return Err(NestError::InvalidParameter(
            "eigenvector centrality is undefined on acyclic graphs (spectral radius 0)".into(),
        ));
    }
    let n = graph.n();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut conv = Convergence::new(opts);
    loop {
        let mut y = transpose_product(graph, &x);
        y.iter_mut().zip(&x).for_each(|(a, b)| *a += b);
        let norm = norm2(&y);
        scale(&mut y, 1.0 / norm);
        let r = sae(&x, &y);
        x = y;
        if let Step::Done = conv.record("eigenvector", r)? {
            break;
        }
    }
    Ok(CentralityVector {
        values: x,
        kind: CentralityKind::Eigenvector,
        norm: Norm::L2,
        iterations: conv.iterations,
        residual: conv.residual,
    })
}

/// Default Katz attenuation: half the inverse spectral radius (0.5 when the
/// radius is below 1, i.e. zero).
pub fn default_attenuation(graph: &Graph) -> f64 {
    0.5 / spectral_radius_estimate(graph).max(1.0)
}

/// Katz centrality `Σ_{k≥0} a^k (Aᵀ)^k 1`, summed until a term's 1-norm is
/// below `tol`. Unnormalized.
pub fn katz(graph: &Graph, attenuation: Option<f64>, opts: &IterOptions) -> Result<CentralityVector> {
    check_nonempty(graph)?;
    let radius = spectral_radius_estimate(graph);
    let a = attenuation.unwrap_or(0.5 / radius.max(1.0));
    if !(a > 0.0 && a.is_finite()) {
        return Err(NestError::InvalidParameter(format!("attenuation must be positive, got {a}")));
    }
    if a * radius >= 1.0 {
        return Err(NestError::DivergentSeries { attenuation: a, radius });
    }
    let n = graph.n();
    let mut term = vec![1.0; n];
    let mut sum = term.clone();
    let mut conv = Convergence::new(opts);
    loop {
        term = transpose_product(graph, &term);
        scale(&mut term, a);
        let size = norm1(&term);
        if !size.is_finite() {
            return Err(NestError::DivergentSeries { attenuation: a, radius });
        }
        sum.iter_mut().zip(&term).for_each(|(s, t)| *s += t);
        if let Step::Done = conv.record("katz", size)? {
            break;
        }
    }
    Ok(CentralityVector {
        values: sum,
        kind: CentralityKind::Katz,
        norm: Norm::Raw,
        iterations: conv.iterations,
        residual: conv.residual,
    })
}

/// HITS authority and hub scores, each with unit 2-norm.
///
/// `AᵀA` is positive semidefinite, so its dominant eigenvalue is never
/// matched in modulus by a negative one and the alternating iteration
/// converges without averaging.
pub fn hits(graph: &Graph, opts: &IterOptions) -> Result<(CentralityVector, CentralityVector)> {
    check_edges(graph)?;
    let n = graph.n();
    let mut hub = vec![1.0; n];
    let mut auth = vec![0.0; n];
    let mut conv = Convergence::new(opts);
    loop {
        let mut a = transpose_product(graph, &hub);
        let norm = norm2(&a);
        scale(&mut a, 1.0 / norm);
        let mut h = product(graph, &a);
        let norm = norm2(&h);
        scale(&mut h, 1.0 / norm);
        let r = sae(&a, &auth) + sae(&h, &hub);
        auth = a;
        hub = h;
        if let Step::Done = conv.record("hits", r)? {
            break;
        }
    }
    let wrap = |values, kind| CentralityVector {
        values,
        kind,
        norm: Norm::L2,
        iterations: conv.iterations,
        residual: conv.residual,
    };
    Ok((wrap(auth, CentralityKind::Authority), wrap(hub, CentralityKind::Hub)))
}
