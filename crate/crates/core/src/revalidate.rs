//! Independent re-validation of certificates.
//!
//! This module deliberately rebuilds everything from raw data: groups come
//! from the catalog tables or from plain modular arithmetic on (kernel,
//! quotient) pairs, adjacency is recomputed from the symmetrised
//! connection set, and the cycle and path walks are checked with a fresh
//! walker. Nothing here imports the search, voltage, or pipeline code, so
//! a bug in those layers cannot hide from this one.

use crate::groups::{catalog::Catalog, FiniteGroup, GroupRef};
use crate::report::{CertConstraints, CertKind, Certificate, VerificationReport};

/// Outcome of checking one certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertCheck {
    pub id: u64,
    pub ok: bool,
    pub detail: String,
}

/// Outcome of checking a whole report against its certificate list.
#[derive(Debug, Clone, Default)]
pub struct RevalidationSummary {
    /// Certificates examined.
    pub checked: usize,
    /// Certificates that failed any structural or walk check.
    pub failed: usize,
    /// Certificate ids referenced by case records but absent from the list.
    pub missing_refs: usize,
    /// Duplicate certificate ids in the list.
    pub duplicate_ids: usize,
    pub results: Vec<CertCheck>,
}

impl RevalidationSummary {
    pub fn all_good(&self) -> bool {
        self.failed == 0 && self.missing_refs == 0 && self.duplicate_ids == 0
    }
}

/// Group element operations rebuilt from raw data only.
enum Rebuilt<'a> {
    Table(&'a FiniteGroup),
    Semi {
        p: u64,
        quotient: &'a FiniteGroup,
        twist: &'a [u64],
    },
}

/// Extended Euclid, returning the inverse of a modulo m when it exists.
fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(((s0 % m as i128 + m as i128) % m as i128) as u64)
}

impl Rebuilt<'_> {
    fn order(&self) -> usize {
        match self {
            Rebuilt::Table(g) => g.order(),
            Rebuilt::Semi { p, quotient, .. } => *p as usize * quotient.order(),
        }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Rebuilt::Table(g) => g.mul(a, b),
            Rebuilt::Semi { p, quotient, twist } => {
                let k = quotient.order();
                let (z1, g1) = (a / k, a % k);
                let (z2, g2) = (b / k, b % k);
                let z = (z1 as u64 + twist[g1] * z2 as u64) % p;
                z as usize * k + quotient.mul(g1, g2)
            }
        }
    }

    fn inv(&self, a: usize) -> usize {
        match self {
            Rebuilt::Table(g) => g.inv(a),
            Rebuilt::Semi { p, quotient, twist } => {
                let k = quotient.order();
                let (z, g) = (a / k, a % k);
                let gi = quotient.inv(g);
                // (z, g)⁻¹ = (-τ(g)⁻¹ z, g⁻¹); τ(g)⁻¹ = τ(g⁻¹).
                let ti = mod_inverse(twist[g], *p).expect("twist values are units");
                let zi = (*p - (ti * z as u64) % p) % p;
                zi as usize * k + gi
            }
        }
    }

    /// Identity located by scanning, not assumed.
    fn identity(&self) -> usize {
        match self {
            Rebuilt::Table(g) => {
                (0..g.order()).find(|&e| (0..g.order()).all(|x| g.mul(e, x) == x))
            }
            // Kernel part zero, so the index is the quotient identity.
            Rebuilt::Semi { quotient, .. } => {
                let k = quotient.order();
                (0..k).find(|&e| (0..k).all(|x| quotient.mul(e, x) == x))
            }
        }
        .expect("every group table has an identity")
    }
}

fn rebuild<'a>(group: &'a GroupRef, catalog: &'a Catalog) -> Result<Rebuilt<'a>, String> {
    match group {
        GroupRef::Catalog { order, index } => catalog
            .group(*order, *index)
            .map(Rebuilt::Table)
            .ok_or_else(|| format!("no catalog group {order}#{index}")),
        GroupRef::SemidirectZn {
            modulus,
            quotient_order,
            quotient_index,
            twist,
        } => {
            let quotient = catalog
                .group(*quotient_order, *quotient_index)
                .ok_or_else(|| format!("no catalog group {quotient_order}#{quotient_index}"))?;
            if *modulus < 2 {
                return Err("kernel modulus below 2".into());
            }
            if twist.len() != quotient.order() {
                return Err("twist length mismatch".into());
            }
            for (g, &t) in twist.iter().enumerate() {
                if t == 0 || t >= *modulus || mod_inverse(t, *modulus).is_none() {
                    return Err(format!("twist value {t} at {g} is not a unit"));
                }
            }
            Ok(Rebuilt::Semi {
                p: *modulus,
                quotient,
                twist,
            })
        }
    }
}

/// Checks one certificate from scratch. Structural checks first (vertex
/// range, distinctness, genset sanity), then every consecutive pair of the
/// walk is verified to be an edge of the rebuilt Cayley graph, then the
/// declared constraints.
pub fn check_certificate(cert: &Certificate, catalog: &Catalog) -> CertCheck {
    let fail = |detail: String| CertCheck {
        id: cert.id,
        ok: false,
        detail,
    };
    let group = match rebuild(&cert.group, catalog) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let n = group.order();
    let e = group.identity();
    if cert.genset.is_empty() {
        return fail("empty connection set".into());
    }
    let mut conn = vec![];
    for &s in &cert.genset {
        if s >= n {
            return fail(format!("connection element {s} out of range"));
        }
        if s == e {
            return fail("identity in the connection set".into());
        }
        conn.push(s);
        conn.push(group.inv(s));
    }
    conn.sort_unstable();
    conn.dedup();
    let step_ok = |u: usize, v: usize| conn.iter().any(|&s| group.mul(u, s) == v);

    let verts = &cert.vertices;
    if verts.len() != n {
        return fail(format!("walk visits {} of {n} vertices", verts.len()));
    }
    let mut seen = vec![false; n];
    for &v in verts {
        let v = v as usize;
        if v >= n {
            return fail(format!("vertex {v} out of range"));
        }
        if seen[v] {
            return fail(format!("vertex {v} repeated"));
        }
        seen[v] = true;
    }
    // Tiny graphs: a 1-cycle is the single vertex, a 2-cycle uses the one
    // doubled edge. Both count as closed walks here.
    for w in verts.windows(2) {
        if !step_ok(w[0] as usize, w[1] as usize) {
            return fail(format!("{} -> {} is not an edge", w[0], w[1]));
        }
    }
    match cert.kind {
        CertKind::Cycle => {
            if n > 1 {
                let (last, first) = (verts[n - 1] as usize, verts[0] as usize);
                if !step_ok(last, first) {
                    return fail(format!("closing edge {last} -> {first} missing"));
                }
            }
        }
        CertKind::Path => {}
    }
    if let Err(e) = check_constraints(&cert.constraints, cert.kind, verts, step_ok) {
        return fail(e);
    }
    CertCheck {
        id: cert.id,
        ok: true,
        detail: "ok".into(),
    }
}

fn check_constraints(
    cons: &CertConstraints,
    kind: CertKind,
    verts: &[u32],
    _step_ok: impl Fn(usize, usize) -> bool,
) -> Result<(), String> {
    if let Some((a, b)) = cons.endpoints {
        if kind != CertKind::Path {
            return Err("endpoint constraint on a cycle".into());
        }
        let (first, last) = (verts[0], verts[verts.len() - 1]);
        if !((first, last) == (a, b) || (first, last) == (b, a)) {
            return Err(format!("endpoints ({first},{last}) differ from ({a},{b})"));
        }
    }
    for &(a, b) in &cons.required_edges {
        let mut found = false;
        for w in verts.windows(2) {
            if (w[0], w[1]) == (a, b) || (w[0], w[1]) == (b, a) {
                found = true;
                break;
            }
        }
        if !found && kind == CertKind::Cycle && verts.len() > 1 {
            let (last, first) = (verts[verts.len() - 1], verts[0]);
            found = (last, first) == (a, b) || (last, first) == (b, a);
        }
        if !found {
            return Err(format!("required edge ({a},{b}) unused"));
        }
    }
    Ok(())
}

/// Re-validates every certificate and cross-checks the report's
/// references. The per-certificate results come back in input order.
pub fn revalidate(report: &VerificationReport, certs: &[Certificate]) -> RevalidationSummary {
    let catalog = Catalog::builtin();
    let mut summary = RevalidationSummary::default();
    let mut ids = std::collections::HashSet::new();
    for cert in certs {
        if !ids.insert(cert.id) {
            summary.duplicate_ids += 1;
        }
        let check = check_certificate(cert, catalog);
        summary.checked += 1;
        if !check.ok {
            summary.failed += 1;
        }
        summary.results.push(check);
    }
    for case in &report.cases {
        for id in case.all_cert_ids() {
            if !ids.contains(&id) {
                summary.missing_refs += 1;
            }
        }
    }
    summary
}
