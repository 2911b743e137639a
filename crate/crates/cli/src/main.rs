use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wedgeconf::cecomplex::{homology, homology_all, WedgeSignature};
use wedgeconf::closedform::{
    conjecture_check, euler_equivariant, euler_nonequivariant, m2n_weight0, sym_multiplicity_char,
    sym_multiplicity_stirling,
};
use wedgeconf::combinat::partitions_of;
use wedgeconf::decomp::full_decomposition;
use wedgeconf::refdata::{ReferenceTable, TableDocument, M2N_DIMENSIONS};
use wedgeconf::symfunc::{getzler_m0n, m0n_poincare, whitehouse_characters, whitehouse_poincare};
use wedgeconf::Error;
use wedgeconf_cli::{checks, render};

/// Largest n computed without --allow-large.
const DEFAULT_MAX_N: usize = 7;

#[derive(Parser)]
#[command(name = "wedgeconf", version, about = "Cohomology of configuration spaces of wedges of spheres")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full decomposition for a wedge of circles, degrees n-1 and n.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        /// Compare degree n-1 with the bundled reference table.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        allow_large: bool,
    },
    /// Multiplicity of Sym^k in H^{n-codim}_c.
    SymMult {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        codim: u8,
    },
    /// Characters of H_i(M_{0,n}).
    M0n {
        #[arg(long)]
        n: usize,
    },
    /// Characters of the Whitehouse modules H^{2k}(F(R^3, n-1)).
    Whitehouse {
        #[arg(long)]
        n: usize,
    },
    /// Euler characteristics of the Schur-functor multiplicity spaces.
    Euler {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        equivariant: bool,
        #[arg(long)]
        allow_large: bool,
    },
    /// Weight-zero compactly supported cohomology of M_{2,n}.
    M2n {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        allow_large: bool,
    },
    /// Raw homology dimensions of the Chevalley-Eilenberg complex.
    Ce {
        /// Sphere dimensions of the wedge, e.g. 1,1,2.
        #[arg(long)]
        wedge: WedgeSignature,
        #[arg(long)]
        n: usize,
        /// Restrict to one multidegree, e.g. 2,1.
        #[arg(long, value_delimiter = ',')]
        multidegree: Option<Vec<usize>>,
    },
    /// Compare the conjectured isotypic rows with the computed ones.
    CheckConjectures {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        allow_large: bool,
    },
    /// Run every acceptance check.
    Selftest {
        /// Run only these criteria (1-8).
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<usize>>,
    },
}

enum Failure {
    Mismatch(String),
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidQuery(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn size_guard(n: usize, allow_large: bool) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    if n > DEFAULT_MAX_N && !allow_large {
        return Err(Failure::Usage(format!("n = {n} exceeds {DEFAULT_MAX_N}; pass --allow-large")));
    }
    Ok(())
}

fn table(n: usize, format: Format, verify: bool, allow_large: bool) -> Result<(), Failure> {
    size_guard(n, allow_large)?;
    let reference = if verify { Some(ReferenceTable::bundled(n)?) } else { None };
    let dec = full_decomposition(n)?;
    match format {
        Format::Json => print!("{}", TableDocument::from_decomposition(&dec)?.to_json()),
        Format::Markdown => print!("{}", render::markdown(&dec)),
    }
    if let Some(reference) = reference {
        let got = ReferenceTable::from_decomposition(&dec, n - 1)?;
        let diff = reference.diff(&got);
        if !diff.is_empty() {
            let mut msg = format!("{} entries differ from {}:", diff.len(), reference.source);
            for d in &diff {
                msg.push_str(&format!("\n  lambda={} mu={} expected={} got={}", d.lambda, d.mu, d.expected, d.got));
            }
            return Err(Failure::Mismatch(msg));
        }
        eprintln!("verified against {}", reference.source);
    }
    Ok(())
}

fn sym_mult(n: usize, k: usize, codim: u8) -> Result<(), Failure> {
    if codim > 1 {
        return Err(Failure::Usage("codim is 0 or 1".into()));
    }
    println!("multiplicity of Sym^{k} in H^{}_c: {}", n as i64 - codim as i64, sym_multiplicity_stirling(n, k, codim));
    if n >= 2 {
        let f = sym_multiplicity_char(n, k, codim)?;
        println!("S_{n}-character: {}", render::character(&f)?);
    }
    Ok(())
}

fn m0n(n: usize) -> Result<(), Failure> {
    let h = getzler_m0n(n)?;
    println!("Poincare polynomial (in -t): {}", m0n_poincare(n));
    for (i, f) in &h {
        println!("H_{i}: {}", render::schur_expansion(f));
    }
    Ok(())
}

fn whitehouse(n: usize) -> Result<(), Failure> {
    let w = whitehouse_characters(n)?;
    println!("Poincare polynomial: {}", whitehouse_poincare(n));
    for (d, f) in &w {
        println!("H^{d}: {}", render::schur_expansion(f));
    }
    Ok(())
}

fn euler(n: usize, equivariant: bool, allow_large: bool) -> Result<(), Failure> {
    if !equivariant {
        for q in 0..=n {
            for mu in partitions_of(q) {
                println!("{mu}: {}", euler_nonequivariant(n, &mu));
            }
        }
        return Ok(());
    }
    size_guard(n, allow_large)?;
    let e = euler_equivariant(n)?;
    println!("H^{n} - H^{}:", n - 1);
    for ((l, m), c) in &e.entries {
        println!("  {l} x S_{m}: {c}");
    }
    Ok(())
}

fn m2n(n: usize, verify: bool, allow_large: bool) -> Result<(), Failure> {
    size_guard(n, allow_large)?;
    let dec = full_decomposition(n)?;
    let w = m2n_weight0(n, &dec)?;
    for (deg, f) in &w.characters {
        println!("gr_0 H^{deg}_c: dim {}: {}", w.dimensions[deg], render::character(f)?);
    }
    if verify {
        let want =
            *M2N_DIMENSIONS.get(n).ok_or_else(|| Failure::Usage(format!("no reference dimension for n = {n}")))?;
        let got = &w.dimensions[&(n + 2)];
        if *got != want.into() {
            return Err(Failure::Mismatch(format!("dimension {got}, reference {want}")));
        }
        eprintln!("verified: dimension {want}");
    }
    Ok(())
}

fn ce(sig: &WedgeSignature, n: usize, md: Option<Vec<usize>>) -> Result<(), Failure> {
    let h = match md {
        Some(md) => {
            if md.len() != sig.genus() {
                return Err(Failure::Usage("one multidegree entry per wedge summand".into()));
            }
            homology(n, sig, &md)?
        }
        None => homology_all(n, sig)?,
    };
    println!("p\ti\tmultidegree\tdim");
    for ((p, i, md), d) in &h.dims {
        if *d > 0 {
            let md: Vec<String> = md.iter().map(|x| x.to_string()).collect();
            println!("{p}\t{i}\t{}\t{d}", md.join(","));
        }
    }
    Ok(())
}

fn check_conjectures(n: usize, allow_large: bool) -> Result<(), Failure> {
    size_guard(n, allow_large)?;
    let dec = full_decomposition(n)?;
    for r in conjecture_check(&dec)? {
        let fmt = |m: &std::collections::BTreeMap<(wedgeconf::Partition, wedgeconf::Partition), u64>| {
            let terms: Vec<String> = m
                .iter()
                .map(|((l, mu), c)| if *c == 1 { format!("{l}x{mu}") } else { format!("{c}*{l}x{mu}") })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        println!("{}: {}", r.name, r.verdict());
        println!("  predicted (as written): {}", fmt(&r.predicted));
        println!("  computed:               {}", fmt(&r.observed));
    }
    Ok(())
}

fn selftest(only: Option<Vec<usize>>) -> Result<(), Failure> {
    let ids = only.unwrap_or_else(|| (1..=checks::CRITERIA.len()).collect());
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > checks::CRITERIA.len()) {
        return Err(Failure::Usage(format!("no criterion {bad}")));
    }
    let session = checks::Session::new();
    let mut failed = 0;
    for id in ids {
        let v = checks::run(id, &session);
        println!(
            "criterion {} ({}): {} [{:.1}s] {}",
            v.id,
            v.title,
            if v.passed { "PASS" } else { "FAIL" },
            v.elapsed.as_secs_f64(),
            v.detail
        );
        failed += !v.passed as usize;
    }
    if failed > 0 {
        return Err(Failure::Mismatch(format!("{failed} criteria failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.cmd {
        Cmd::Table { n, format, verify, allow_large } => table(n, format, verify, allow_large),
        Cmd::SymMult { n, k, codim } => sym_mult(n, k, codim),
        Cmd::M0n { n } => m0n(n),
        Cmd::Whitehouse { n } => whitehouse(n),
        Cmd::Euler { n, equivariant, allow_large } => euler(n, equivariant, allow_large),
        Cmd::M2n { n, verify, allow_large } => m2n(n, verify, allow_large),
        Cmd::Ce { wedge, n, multidegree } => ce(&wedge, n, multidegree),
        Cmd::CheckConjectures { n, allow_large } => check_conjectures(n, allow_large),
        Cmd::Selftest { only } => selftest(only),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal inconsistency: {m}");
            ExitCode::from(3)
        }
    }
}
