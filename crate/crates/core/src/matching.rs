//! Bipartite matching by augmenting paths (Kuhn's algorithm).

/// Finds a matching that covers every element of `bundles`.
///
/// Returns, for each bundle, the position in `candidates` it is matched to,
/// or `None` when no saturating matching exists.
pub fn saturating_matching<B, C>(bundles: &[B], candidates: &[C], edge: impl Fn(&B, &C) -> bool) -> Option<Vec<usize>> {
    if bundles.len() > candidates.len() {
        return None;
    }
    let adj: Vec<Vec<usize>> = bundles
        .iter()
        .map(|b| {
            candidates
                .iter()
                .enumerate()
                .filter(|(_, c)| edge(b, c))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let mut match_of_candidate: Vec<Option<usize>> = vec![None; candidates.len()];
    for b in 0..bundles.len() {
        let mut seen = vec![false; candidates.len()];
        if !augment(b, &adj, &mut seen, &mut match_of_candidate) {
            return None;
        }
    }
    let mut result = vec![0; bundles.len()];
    for (c, m) in match_of_candidate.iter().enumerate() {
        if let Some(b) = m {
            result[*b] = c;
        }
    }
    Some(result)
}

fn augment(b: usize, adj: &[Vec<usize>], seen: &mut [bool], match_of_candidate: &mut [Option<usize>]) -> bool {
    for &c in &adj[b] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        let free = match match_of_candidate[c] {
            None => true,
            Some(other) => augment(other, adj, seen, match_of_candidate),
        };
        if free {
            match_of_candidate[c] = Some(b);
            return true;
        }
    }
    false
}
