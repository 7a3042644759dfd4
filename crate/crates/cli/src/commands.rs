use std::io::{Read, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use adjminor::encoding::{format_collection, parse_collection};
use adjminor::enumerate::{enumerate_collections, EnumerationConfig};
use adjminor::ideals::CollectionRing;
use adjminor::polyalg::{groebner_basis, Budget, MonomialOrder, Polynomial, VariableContext};
use adjminor::primes::{classify, min_admissible_height, minimal_primes, PrimeSummary};
use adjminor::radicality::{
    dt_extra_binomials, dt_family, dt_labels, dt_order, dt_witness, is_minimally_non_radical,
    is_radical, ConfigLibrary, Method, RadicalOptions, Radicality,
};
use adjminor::{CellCollection, Error, Vertex};

use crate::error::CliError;
use crate::records::*;
use crate::{Cli, Command, Table, BUDGET_ENV};

/// The L-tromino `{(1,1),(2,1),(1,2)}`.
fn l_tromino() -> CellCollection {
    CellCollection::from_coords(&[(1, 1), (2, 1), (1, 2)])
}

/// A non-convex pentomino free of both obstruction patterns, yet not unmixed.
fn non_convex_pentomino() -> CellCollection {
    CellCollection::from_coords(&[(1, 1), (2, 1), (1, 2), (3, 1), (3, 2)])
}

fn read_collections(path: &Path) -> Result<Vec<CellCollection>, CliError> {
    let mut text = String::new();
    let shown = path.display().to_string();
    if shown == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|source| CliError::Input {
            path: shown,
            source,
        })?;
    }
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_collection(line).map_err(|source| CliError::Line {
            line: k + 1,
            source,
        })?);
    }
    Ok(out)
}

fn budget_seconds(flag: Option<f64>) -> Result<Option<Duration>, CliError> {
    let secs = match flag {
        Some(s) => Some(s),
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => Some(v.trim().parse::<f64>().map_err(|_| {
                Error::Unsupported(format!("{BUDGET_ENV}={v} is not a number of seconds"))
            })?),
            Err(_) => None,
        },
    };
    match secs {
        Some(s) if !(s > 0.0 && s.is_finite()) => {
            Err(Error::Unsupported(format!("budget must be positive, got {s}")).into())
        }
        Some(s) => Ok(Some(Duration::from_secs_f64(s))),
        None => Ok(None),
    }
}

fn radical_options(method: Method, budget: Option<Duration>) -> RadicalOptions {
    RadicalOptions {
        method,
        time_limit: budget,
        ..RadicalOptions::default()
    }
}

fn elapsed(cli: &Cli, start: Instant) -> Option<f64> {
    cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0)
}

fn show(polys: &[Polynomial], ctx: &VariableContext) -> Vec<String> {
    polys.iter().map(|p| p.display(ctx).to_string()).collect()
}

fn show_in(polys: &[Polynomial], ctx: &VariableContext, order: &MonomialOrder) -> Vec<String> {
    polys
        .iter()
        .map(|p| p.display_in(ctx, order).to_string())
        .collect()
}

fn classify_record(
    cli: &Cli,
    c: &CellCollection,
    primes: bool,
    opts: &RadicalOptions,
) -> Result<ClassifyRecord, CliError> {
    let start = Instant::now();
    let report = classify(c, primes)?;
    let v = is_radical(c, opts)?;
    Ok(ClassifyRecord {
        collection: format_collection(c),
        report,
        radical: VerdictFields::new(&v, c),
        elapsed_ms: elapsed(cli, start),
    })
}

fn primes_record(cli: &Cli, c: &CellCollection) -> Result<MinimalPrimesRecord, CliError> {
    let start = Instant::now();
    let ring = CollectionRing::new(c);
    let primes = minimal_primes(c)?
        .into_iter()
        .map(|p| PrimeRecord {
            summary: PrimeSummary {
                w: p.admissible.vertices().to_vec(),
                height: p.height,
                lattice_cells: p.cells.len(),
            },
            generators: show(&p.generators, ring.ctx()),
        })
        .collect();
    Ok(MinimalPrimesRecord {
        collection: format_collection(c),
        rank: c.rank(),
        primes,
        elapsed_ms: elapsed(cli, start),
    })
}

/// Resolves `i,j`, `x_{i,j}`, `(i,j)`, or a `D_t` label when `dt` is given.
fn resolver<'a>(
    ring: &'a CollectionRing,
    dt: Option<(adjminor::radicality::DtLabels, (i64, i64))>,
) -> impl Fn(&str) -> Option<usize> + 'a {
    move |label: &str| {
        let inner = label
            .trim()
            .trim_start_matches("x_")
            .trim_start_matches(['{', '('])
            .trim_end_matches(['}', ')']);
        if let Some((x, y)) = inner.split_once(',') {
            let v = Vertex::new(x.trim().parse().ok()?, y.trim().parse().ok()?);
            return ring.var(&v);
        }
        let (labels, (dx, dy)) = dt.as_ref()?;
        let v = labels.resolve(label)?;
        ring.var(&Vertex::new(v.x + dx, v.y + dy))
    }
}

/// `Some((labels, offset))` when `c` is a translate of some `D_t`.
fn as_dt(c: &CellCollection) -> Option<(adjminor::radicality::DtLabels, (i64, i64))> {
    let t = c.rank().checked_sub(4)?;
    let d = dt_family(t).ok()?;
    let (cx, cy) = c.min_corner()?;
    let (dx, dy) = d.min_corner()?;
    (d.translate(cx - dx, cy - dy) == *c)
        .then(|| (dt_labels(t).expect("t >= 2"), (cx - dx, cy - dy)))
}

fn census(sink: &mut Sink<impl Write>, rank_max: usize) -> Result<(), CliError> {
    for rank in 2..=rank_max {
        let mut cfg = EnumerationConfig::new(rank, true);
        cfg.max_rank = cfg.max_rank.max(rank_max);
        let n = enumerate_collections(&cfg, |_| {})?;
        sink.emit(&CensusRow {
            rank,
            collections: n,
            non_radical: None,
            unknown: None,
        })?;
    }
    Ok(())
}

fn nonradical(
    sink: &mut Sink<impl Write>,
    rank_max: usize,
    budget: Option<Duration>,
) -> Result<usize, CliError> {
    let opts = RadicalOptions {
        library: None,
        ..radical_options(Method::Exact, budget)
    };
    let mut undecided = 0;
    for rank in 2..=rank_max {
        let mut cfg = EnumerationConfig::new(rank, true);
        cfg.max_rank = cfg.max_rank.max(rank_max);
        let mut all = Vec::new();
        enumerate_collections(&cfg, |c| all.push(c))?;
        let (mut bad, mut unknown) = (0, 0);
        for c in &all {
            match is_radical(c, &opts) {
                Ok(v) if v.verdict == Radicality::NonRadical => bad += 1,
                Ok(_) => {}
                Err(Error::Budget(_)) => unknown += 1,
                Err(e) => return Err(e.into()),
            }
        }
        undecided += unknown;
        sink.emit(&CensusRow {
            rank,
            collections: all.len(),
            non_radical: Some(bad),
            unknown: Some(unknown),
        })?;
    }
    Ok(undecided)
}

fn dt_record(t: usize) -> Result<DtRecord, CliError> {
    let d = dt_family(t)?;
    let ring = CollectionRing::new(&d);
    let labels = dt_labels(t)?;
    let mut names: Vec<String> = ring.ctx().names().to_vec();
    for (name, v) in labels.all() {
        names[ring.var(&v).expect("labelled vertex")] = name;
    }
    let ctx = VariableContext::new(names);
    let order = dt_order(t, &ring)?;
    let gens: Vec<Polynomial> = d.cells().map(|cell| ring.cell_minor(cell)).collect();
    let gb = groebner_basis(&gens, &order, &Budget::default())?;
    let mut expect: Vec<Polynomial> = gens.iter().map(|g| g.monic(&order)).collect();
    expect.extend(
        dt_extra_binomials(t, &ring)?
            .iter()
            .map(|g| g.monic(&order)),
    );
    let basis = gb.polynomials();
    let matches = basis.len() == expect.len() && expect.iter().all(|p| basis.contains(p));
    let f = dt_witness(t, &ring)?;
    let (h, _) = min_admissible_height(&d);
    let witness = f.display_in(&ctx, &order).to_string();
    let minimal = is_minimally_non_radical(
        &d,
        &RadicalOptions {
            library: None,
            ..RadicalOptions::default()
        },
    )?;
    Ok(DtRecord {
        t,
        collection: format_collection(&d),
        order: order.describe(ctx.names()),
        basis: show_in(&basis, &ctx, &order),
        basis_matches: matches,
        witness,
        witness_reduces_to_zero: gb.contains(&f),
        witness_square_reduces_to_zero: gb.contains(&f.mul(&f)),
        min_height: h,
        complete_intersection: h == d.rank(),
        minimally_non_radical: Some(minimal),
    })
}

pub fn run(cli: &Cli, out: impl Write) -> Result<(), CliError> {
    let mut sink = Sink::new(cli.format, out);
    match &cli.command {
        Command::Enumerate {
            rank,
            up_to_symmetry,
            filter,
            max_rank,
        } => {
            let cfg = EnumerationConfig {
                rank: *rank,
                up_to_symmetry: *up_to_symmetry,
                filters: filter.clone(),
                max_rank: *max_rank,
            };
            let mut failure = None;
            enumerate_collections(&cfg, |c| {
                if failure.is_none() {
                    let rec = EnumerateRecord {
                        collection: format_collection(&c),
                        rank: c.rank(),
                    };
                    failure = sink.emit(&rec).err();
                }
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
        }
        Command::Classify {
            input,
            primes,
            budget,
        } => {
            let opts = radical_options(Method::Auto, budget_seconds(*budget)?);
            let mut undecided = 0;
            for c in read_collections(input)? {
                let rec = classify_record(cli, &c, *primes, &opts)?;
                if rec.radical.verdict == Radicality::Unknown {
                    undecided += 1;
                }
                sink.emit(&rec)?;
            }
            if undecided > 0 {
                return Err(CliError::Undecided(undecided));
            }
        }
        Command::MinimalPrimes { input } => {
            for c in read_collections(input)? {
                sink.emit(&primes_record(cli, &c)?)?;
            }
        }
        Command::Radical {
            input,
            method,
            budget,
        } => {
            let method = Method::from(*method);
            let opts = radical_options(method, budget_seconds(*budget)?);
            let mut undecided = 0;
            for c in read_collections(input)? {
                let start = Instant::now();
                let v = is_radical(&c, &opts)?;
                // Witness and screen are one-sided; only the deciding methods count as budget aborts.
                if v.verdict == Radicality::Unknown
                    && matches!(method, Method::Auto | Method::Exact)
                {
                    undecided += 1;
                }
                sink.emit(&RadicalRecord {
                    collection: format_collection(&c),
                    rank: c.rank(),
                    verdict: VerdictFields::new(&v, &c),
                    elapsed_ms: elapsed(cli, start),
                })?;
            }
            if undecided > 0 {
                return Err(CliError::Undecided(undecided));
            }
        }
        Command::Groebner { input, order } => {
            for c in read_collections(input)? {
                let ring = CollectionRing::new(&c);
                let ord = MonomialOrder::parse(order, ring.len(), resolver(&ring, as_dt(&c)))?;
                let gens: Vec<Polynomial> = c.cells().map(|cell| ring.cell_minor(cell)).collect();
                let gb = groebner_basis(&gens, &ord, &Budget::default())?;
                sink.emit(&GroebnerRecord {
                    collection: format_collection(&c),
                    order: ord.describe(ring.ctx().names()),
                    basis: show_in(&gb.polynomials(), ring.ctx(), &ord),
                })?;
            }
        }
        Command::Reproduce {
            table,
            t,
            rank_max,
            budget,
        } => match table {
            Table::Census => census(&mut sink, rank_max.unwrap_or(7))?,
            Table::Nonradical => {
                let undecided =
                    nonradical(&mut sink, rank_max.unwrap_or(5), budget_seconds(*budget)?)?;
                if undecided > 0 {
                    return Err(CliError::Undecided(undecided));
                }
            }
            Table::Remark26 | Table::Remark38 => {
                let c = if *table == Table::Remark26 {
                    l_tromino()
                } else {
                    non_convex_pentomino()
                };
                sink.emit(&primes_record(cli, &c)?)?;
                let opts = radical_options(Method::Auto, budget_seconds(*budget)?);
                sink.emit(&classify_record(cli, &c, false, &opts)?)?;
            }
            Table::Prop44 => sink.emit(&dt_record(*t)?)?,
        },
        Command::ValidateConfigs => {
            let lib = ConfigLibrary::builtin();
            let opts = RadicalOptions {
                library: None,
                ..RadicalOptions::default()
            };
            let mut failed = 0;
            for e in lib.entries() {
                let ok = is_minimally_non_radical(&e.collection, &opts)?;
                if !ok {
                    failed += 1;
                }
                sink.emit(&ValidateRecord {
                    name: e.name.clone(),
                    rank: e.rank,
                    collection: format_collection(&e.collection),
                    minimally_non_radical: ok,
                })?;
            }
            if failed > 0 {
                return Err(CliError::Invalid(failed));
            }
        }
    }
    Ok(())
}
