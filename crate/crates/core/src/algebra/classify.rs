use super::signature::CkSignature;

/// Counts of positive and negative entries of `(1, κ_1, κ_1κ_2, …)`, larger first.
fn signature_counts(kappa: &[f64]) -> (usize, usize) {
    let mut prod = 1.0;
    let (mut pos, mut neg) = (1, 0);
    for &k in kappa {
        prod *= k;
        if prod > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    (pos.max(neg), pos.min(neg))
}

fn pq(prefix: &str, (p, q): (usize, usize)) -> String {
    if q == 0 {
        format!("{prefix}({p})")
    } else {
        format!("{prefix}({p},{q})")
    }
}

fn name_of(kappa: &[f64]) -> String {
    let n = kappa.len();
    if n == 0 {
        return "so(1)".into();
    }
    let zeros: Vec<usize> = (0..n).filter(|&i| kappa[i] == 0.0).collect();
    if zeros.is_empty() {
        return pq("so", signature_counts(kappa));
    }
    if zeros.len() == n {
        return "flag".into();
    }
    if zeros == [0] {
        return pq("iso", signature_counts(&kappa[1..]));
    }
    if zeros == [0, 1] {
        return pq("iiso", signature_counts(&kappa[2..]));
    }
    // first zero at κ_a splits off t_{a(N+1−a)} ⊙ (so_{κ1..κa−1}(a) ⊕ so_{κa+1..κN}(N+1−a))
    let a = zeros[0] + 1;
    // so(1) is the zero algebra and is dropped from the sum
    let parts: Vec<String> = [name_of(&kappa[..a - 1]), name_of(&kappa[a..])]
        .into_iter()
        .filter(|s| s != "so(1)")
        .collect();
    format!("t_{}⊙({})", a * (n + 1 - a), parts.join("⊕"))
}

/// Names the algebra from the zero pattern and signs of κ.
///
/// Isomorphic algebras reached from different sign vectors keep distinct
/// `(p, q)` labels; no canonical form is attempted.
pub fn classify_algebra(sig: &CkSignature) -> String {
    name_of(sig.kappa())
}
