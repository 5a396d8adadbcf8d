use std::collections::BTreeSet;
use std::io::Write;

use gf2dav_core::gf2poly::{self, factor as factorize};
use gf2dav_core::{
    davenport_group, davenport_semigroup, delta_f, reduce_sequence, DavenportValue, GroupTable, Poly, ReduceError,
    RingCtx, SearchOptions, Seq, ZeroSumError,
};

use crate::error::CliError;
use crate::report::{elem_texts, texts, IrreducibleReport, ReduceReport};

/// Trial division stops being quick beyond this degree.
pub const MAX_FACTOR_DEGREE: usize = 48;

pub fn parse_poly(text: &str) -> Result<Poly, CliError> {
    gf2poly::parse(text).map_err(|source| CliError::Parse {
        input: text.to_string(),
        source,
    })
}

pub fn parse_modulus(text: &str) -> Result<RingCtx, CliError> {
    Ok(RingCtx::new(parse_poly(text)?)?)
}

pub fn factor(out: &mut dyn Write, f: &str) -> Result<(), CliError> {
    let f = parse_poly(f)?;
    if f.degree().unwrap_or(0) > MAX_FACTOR_DEGREE {
        return Err(CliError::Usage(format!("factoring is limited to degree {MAX_FACTOR_DEGREE}")));
    }
    let fac = factorize(&f).map_err(|source| CliError::Parse {
        input: f.to_string(),
        source,
    })?;
    if fac.is_irreducible() && f.degree() > Some(1) {
        writeln!(out, "{fac} (irreducible)")?;
    } else {
        writeln!(out, "{fac}")?;
    }
    Ok(())
}

pub fn info(out: &mut dyn Write, f: &str) -> Result<(), CliError> {
    let ctx = parse_modulus(f)?;
    let delta = delta_f(ctx.modulus()).expect("modulus is nonconstant");
    let units = GroupTable::unit_group(&ctx);
    let classes: BTreeSet<_> = ctx.elements().map(|a| ctx.profile(a)).collect();
    writeln!(out, "modulus        {}", ctx.modulus())?;
    writeln!(out, "degree         {}", ctx.degree())?;
    writeln!(out, "ring size      {}", ctx.size())?;
    writeln!(out, "factorization  {}", ctx.factorization())?;
    writeln!(out, "delta          {} (gcd with x^2+x: {})", delta.value, delta.gcd_with_x_x1)?;
    writeln!(out, "units          {}", units.order())?;
    match units.generator() {
        Some(g) => writeln!(out, "unit group     cyclic, generated by {}", units.elements()[g])?,
        None => writeln!(out, "unit group     not cyclic")?,
    }
    writeln!(out, "H-classes      {}", classes.len())?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Semigroup,
    Units,
    Both,
}

fn budget_error(what: &'static str, e: ZeroSumError) -> CliError {
    match e {
        ZeroSumError::BudgetExceeded { budget, lower_bound } => CliError::Budget {
            what,
            budget,
            lower_bound,
        },
        other => CliError::Invariant(other.to_string()),
    }
}

fn print_value(out: &mut dyn Write, name: &str, d: &DavenportValue) -> Result<(), CliError> {
    writeln!(out, "{name} = {} [{}, {} nodes]", d.value, d.provenance, d.nodes)?;
    writeln!(out, "  extremal: {}", d.extremal)?;
    Ok(())
}

pub fn davenport(out: &mut dyn Write, f: &str, target: Target, opts: SearchOptions) -> Result<(), CliError> {
    let ctx = parse_modulus(f)?;
    let ds = match target {
        Target::Units => None,
        _ => Some(davenport_semigroup(&ctx, opts.budget).map_err(|e| budget_error("D_S", e))?),
    };
    let du = match target {
        Target::Semigroup => None,
        _ => Some(davenport_group(&GroupTable::unit_group(&ctx), opts).map_err(|e| budget_error("D_U", e))?),
    };
    if let Some(d) = &ds {
        print_value(out, "D_S", d)?;
    }
    if let Some(d) = &du {
        print_value(out, "D_U", d)?;
    }
    let delta = delta_f(ctx.modulus()).expect("modulus is nonconstant").value as usize;
    writeln!(out, "delta = {delta}")?;
    if let (Some(ds), Some(du)) = (&ds, &du) {
        let ok = du.value <= ds.value && ds.value <= du.value + delta;
        writeln!(
            out,
            "bound: {} <= {} <= {} {}",
            du.value,
            ds.value,
            du.value + delta,
            if ok { "holds" } else { "FAILS" }
        )?;
        if !ok {
            return Err(CliError::Invariant(format!("bound fails for f = {}", ctx.modulus())));
        }
    }
    Ok(())
}

pub fn reduce(out: &mut dyn Write, f: &str, terms: &[String]) -> Result<(), CliError> {
    let ctx = parse_modulus(f)?;
    let t: Seq = terms
        .iter()
        .map(|s| parse_poly(s).map(|p| ctx.elem(&p)))
        .collect::<Result<_, _>>()?;
    match reduce_sequence(&ctx, &t) {
        Ok(trace) => {
            let report = ReduceReport {
                f: ctx.modulus().to_string(),
                input: texts(&trace.input),
                sigma: trace.input.product(&ctx).to_string(),
                delta: trace.delta.value,
                v: texts(&trace.v),
                chain_sizes: trace.chain.iter().map(|k| k.len()).collect(),
                m: trace.strict_steps.clone(),
                counting_holds: trace.counting_holds,
                j: trace.j.iter().map(|&i| ctx.prime_powers()[i].to_string()).collect(),
                lifted: trace.lifted.iter().map(|(a, l)| [a.to_string(), l.to_string()]).collect(),
                w: texts(&trace.w),
                result: texts(&trace.result),
                path: trace.path.to_string(),
            };
            writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
            Ok(())
        }
        Err(ReduceError::Irreducible(cert)) => {
            let report = IrreducibleReport {
                f: ctx.modulus().to_string(),
                irreducible: true,
                sequence: texts(&cert.sequence),
                sigma: cert.sigma.to_string(),
                proper_products: elem_texts(cert.proper_products.iter()),
            };
            writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
            Err(CliError::Irreducible)
        }
    }
}
