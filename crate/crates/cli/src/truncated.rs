//! Commands on fixtures with a `presented.json`. All checks run on the
//! degree-`--cutoff` truncation (default 4).

use hopfstar::cqgtools::{bi_invariant, peter_weyl};
use hopfstar::expectation::ThetaFunctional;
use hopfstar::numkernel::C64;
use hopfstar::presented::{
    decide_presented, decide_presented_escalating, filtration, truncated_coideal_entry,
    truncated_quotient, truncated_theta, verify_laws, Poly, PresentedHopf,
};
use hopfstar::report::Entry;
use hopfstar::{Error, Result};

use crate::{guard, Command, Options};

pub(crate) const DEFAULT_DEGREE: usize = 4;
/// Largest degree an escalating run will try.
pub(crate) const MAX_DEGREE: usize = 8;

type Coideals = [(String, Vec<Poly>)];

pub(crate) fn run(
    cmd: &Command,
    p: &PresentedHopf,
    coideals: &Coideals,
    opts: &Options,
) -> Result<Vec<Entry>> {
    let d = opts.cutoff.unwrap_or(DEFAULT_DEGREE);
    // products of two degree-d elements must stay below the rewriting cutoff
    let p = if p.cutoff < 2 * d {
        p.with_cutoff(2 * d)?
    } else {
        p.clone()
    };
    let p = &p;
    let per = |check: &str, f: &dyn Fn(&[Poly]) -> Result<Entry>| -> Result<Vec<Entry>> {
        coideals
            .iter()
            .map(|(name, gens)| {
                guard(check, Some(name), f(gens)).map(|e| e.detail("degree", d))
            })
            .collect()
    };
    match cmd {
        Command::Verify { .. } => {
            let mut out = vec![verify_laws(p, d)?];
            out.extend(per("truncated_coideal", &|g| truncated_coideal_entry(p, g, d))?);
            Ok(out)
        }
        Command::Haar { .. } => Ok(vec![guard("snapshot_haar", None, haar_entry(p, d))?]),
        Command::Peterweyl { .. } => {
            let snap = filtration(p, d)?;
            let pw = peter_weyl(&snap.coalg, opts.seed)?;
            let mut e = Entry::new("peter_weyl")
                .residual("comultiplication", pw.comult_residual(&snap.coalg), p.tol * 10.0)
                .detail("degree", d)
                .detail("dim", snap.dim())
                .detail("blocks", pw.sizes());
            crate::finite::absorb(&mut e, snap.coalg.verify(), "snapshot");
            Ok(vec![e])
        }
        Command::Quotient { .. } => per("truncated_quotient", &|g| {
            let tq = truncated_quotient(p, g, d)?;
            Ok(tq.validation)
        }),
        Command::DecideExpected { .. } | Command::Positivity { .. } => {
            let escalate = matches!(cmd, Command::DecideExpected { escalate: true, .. });
            per("decide_expected", &|g| {
                let v = if escalate {
                    decide_presented_escalating(p, g, d, MAX_DEGREE)?
                } else {
                    decide_presented(p, g, d)?
                };
                Ok(v.entry)
            })
        }
        Command::Fourier { .. } => per("theta", &|g| {
            let tq = truncated_quotient(p, g, d)?;
            let th = truncated_theta(p, &tq)?;
            Ok(theta_entry(&th, p.tol).detail("blocks", tq.peter_weyl()?.sizes()))
        }),
        other => Err(Error::InvalidInput(format!(
            "command `{}` needs a finite fixture (hopf.json); presented fixtures support verify, haar, peterweyl, quotient, positivity, decide-expected and fourier",
            other.name()
        ))),
    }
}

fn theta_entry(th: &ThetaFunctional, tol: f64) -> Entry {
    let pos = th.block_positivity(tol);
    let min = pos
        .iter()
        .map(|p| p.min_eigenvalue)
        .fold(f64::INFINITY, f64::min);
    Entry::new("theta")
        .require(pos.iter().all(|p| p.positive))
        .value("min_eigenvalue", min)
        .detail("blocks_psd", pos.iter().all(|p| p.positive))
}

/// Haar state of the degree-`d` filtration; it must vanish on every
/// non-trivial Peter–Weyl block.
fn haar_entry(p: &PresentedHopf, d: usize) -> Result<Entry> {
    let snap = filtration(p, d)?;
    let unit = snap
        .unit
        .clone()
        .ok_or_else(|| Error::InternalError("filtration does not contain 1".into()))?;
    let (h, residual) = bi_invariant(&snap.coalg, &unit)?;
    let pw = peter_weyl(&snap.coalg, 0)?;
    let mut off = 0.0f64;
    for b in pw.blocks.iter().filter(|b| b.n > 1) {
        for c in &b.coeffs {
            let v: C64 = h.iter().zip(c.iter()).map(|(x, y)| x * y).sum();
            off = off.max(v.norm());
        }
    }
    Ok(Entry::new("snapshot_haar")
        .residual("bi_invariance", residual, p.tol * 10.0)
        .residual("nontrivial_blocks", off, p.tol * 10.0)
        .detail("degree", d)
        .detail("dim", snap.dim())
        .detail("blocks", pw.sizes()))
}
