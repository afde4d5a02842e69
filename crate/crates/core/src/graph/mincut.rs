use super::{Capacities, Cut, GraphError, Multigraph, VertexSet};

/// Exact global minimum cut (Stoer–Wagner, dense `O(n^3)`).
///
/// Returns a canonical cut attaining the minimum together with its value.
/// Deterministic: ties between phases keep the earliest phase cut.
pub fn min_cut(g: &Multigraph, caps: &Capacities) -> Result<(Cut, f64), GraphError> {
    g.check_caps(caps)?;
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let n = g.vertex_count();
    let mut weight = vec![vec![0.0f64; n]; n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        weight[u][v] += caps[e];
        weight[v][u] += caps[e];
    }
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;

    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut key = vec![0.0f64; n];
        let mut prev = active[0];
        let mut last = active[0];
        added[last] = true;
        for &v in &active {
            key[v] = weight[last][v];
        }
        for _ in 1..active.len() {
            let next = active
                .iter()
                .copied()
                .filter(|&v| !added[v])
                .fold(None, |acc: Option<usize>, v| match acc {
                    Some(b) if key[b] >= key[v] => Some(b),
                    _ => Some(v),
                })
                .expect("an unadded vertex remains");
            added[next] = true;
            prev = last;
            last = next;
            for &v in &active {
                if !added[v] {
                    key[v] += weight[next][v];
                }
            }
        }
        // cut of the phase separates `last` from everything else
        let phase_value = key[last];
        if best.as_ref().is_none_or(|(b, _)| phase_value < *b) {
            best = Some((phase_value, members[last].clone()));
        }
        let moved = std::mem::take(&mut members[last]);
        members[prev].extend(moved);
        for &v in &active {
            weight[prev][v] += weight[last][v];
            weight[v][prev] = weight[prev][v];
        }
        weight[prev][prev] = 0.0;
        active.retain(|&v| v != last);
    }

    let (_, shore) = best.expect("n >= 2 gives at least one phase");
    let mut side = VertexSet::with_capacity(n);
    for v in shore {
        side.insert(v);
    }
    let cut = Cut::from_set(n, side)?;
    // recompute from the original edges so the value carries no merge round-off
    let value = g.crossing(cut.side()).map(|e| caps[e]).sum();
    Ok((cut.with_capacity(value), value))
}
