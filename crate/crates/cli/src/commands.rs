use sr_chroma::complex::parse_vector;
use sr_chroma::realize::{
    check_realizable, decompose_s, partition_from_coloring, partition_from_decomposition, verify_partition,
    verify_partition_with_family, DegreeMultisetFamily, Scheme, Status,
};
use sr_chroma::search::{search_action, SearchOptions, DEFAULT_CAP};
use sr_chroma::steenrod::{check_action, coloring_from_action, default_degree_bound, necessary_condition, SteenrodTable};
use sr_chroma::{build_complex, chromatic_number, parse_graph, span_chromatic_number, Family, Graph, JoinComplex, SrRing};

use crate::config::RunConfig;
use crate::report::{Outcome, Report};
use crate::{read, CliError};

fn graph(cfg: &RunConfig) -> Result<Graph, CliError> {
    let path = cfg.graph.as_ref().ok_or_else(|| CliError::Input("no graph file given".into()))?;
    parse_graph(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn family(cfg: &RunConfig) -> Result<Family, CliError> {
    let tag = cfg.family.as_deref().ok_or_else(|| CliError::Input("no family given".into()))?;
    let vector = parse_vector(cfg.vector.as_deref().unwrap_or(""))?;
    Ok(Family::from_parts(tag, cfg.p, &vector)?)
}

fn polynomial(spec: &str) -> Result<JoinComplex, CliError> {
    let mut gens = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (label, degree) = item
            .split_once(':')
            .ok_or_else(|| CliError::Input(format!("generator `{item}` is not `label:degree`")))?;
        let degree: u32 = degree
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("bad degree in `{item}`")))?;
        gens.push((label.trim().to_string(), degree));
    }
    let refs: Vec<(&str, u32)> = gens.iter().map(|(l, d)| (l.as_str(), *d)).collect();
    Ok(JoinComplex::polynomial(&refs)?)
}

/// The complex from `generators`, or from `family` and `graph`.
fn complex(cfg: &RunConfig) -> Result<JoinComplex, CliError> {
    match &cfg.generators {
        Some(spec) => polynomial(spec),
        None => Ok(build_complex(&family(cfg)?, &graph(cfg)?)?),
    }
}

fn action_prime(cfg: &RunConfig, k: &JoinComplex) -> Result<u32, CliError> {
    let p = cfg
        .p
        .or_else(|| k.family().prime())
        .ok_or_else(|| CliError::Input("no prime given".into()))?;
    if p == 2 || !sr_chroma::fp::is_prime(p) {
        return Err(CliError::Input(format!("action commands need an odd prime, got p = {p}")));
    }
    Ok(p)
}

fn coloring_lines(g: &Graph, colors: &[usize]) -> String {
    colors.iter().enumerate().map(|(v, c)| format!("{} {c}\n", g.label(v))).collect()
}

pub fn chromatic(cfg: &RunConfig, span: Option<u32>) -> Result<Report, CliError> {
    let g = graph(cfg)?;
    let (chi, coloring) = chromatic_number(&g);
    let mut r = Report::new("chromatic", Outcome::Positive, "computed");
    r.field("chi", chi).block("coloring", &coloring_lines(&g, coloring.colors()));
    if let Some(p) = span {
        let (s, witness) = span_chromatic_number(&g, p)?;
        r.field(&format!("s_{p}chi"), s).block("witness", &witness.to_text(&g));
    }
    Ok(r)
}

pub fn span_chromatic(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = graph(cfg)?;
    let p = cfg.p.ok_or_else(|| CliError::Input("no prime given".into()))?;
    let (s, witness) = span_chromatic_number(&g, p)?;
    let mut r = Report::new("span-chromatic", Outcome::Positive, "computed");
    r.field(&format!("s_{p}chi"), s).block("witness", &witness.to_text(&g));
    Ok(r)
}

pub fn complex_report(cfg: &RunConfig) -> Result<Report, CliError> {
    let k = complex(cfg)?;
    let mut r = Report::new("build-complex", Outcome::Positive, "built");
    r.field("family", k.family())
        .field("generators", k.num_generators())
        .field("maximal faces", k.maximal_faces().len())
        .block("presentation", &k.presentation())
        .block("complex", &k.to_text());
    Ok(r)
}

fn search_options(cfg: &RunConfig) -> SearchOptions {
    SearchOptions {
        degree_bound: cfg.degree_bound,
        relations: cfg.relations.unwrap_or_default(),
        cap: cfg.cap.unwrap_or(Some(DEFAULT_CAP)),
    }
}

pub fn action_search(cfg: &RunConfig) -> Result<Report, CliError> {
    let k = complex(cfg)?;
    let p = action_prime(cfg, &k)?;
    let ring = SrRing::new(k, p)?;
    let rep = search_action(&ring, &search_options(cfg))?;
    let (outcome, status) = match rep.table() {
        Some(_) => (Outcome::Positive, "found".to_string()),
        None => (Outcome::Negative, format!("exhausted ({})", rep.scope())),
    };
    let mut r = Report::new("action-search", outcome, status);
    r.field("p", p)
        .field("relations", rep.relations.name())
        .field("degree bound", rep.degree_bound)
        .field("unknowns", rep.stats.unknowns)
        .field("equations", rep.stats.equations)
        .field("branch variables", rep.stats.branch_variables)
        .field("nodes", rep.stats.nodes);
    if let Some(t) = rep.table() {
        r.block("table", &t.to_text());
        let g = ring.complex().graph();
        if matches!(ring.complex().family(), Family::Bp { .. } | Family::B { .. })
            && g.vertex_count() > 0
            && g.min_degree().is_some_and(|d| d >= 2)
        {
            let (_, cokernels) = coloring_from_action(t)?;
            let lines: String = cokernels
                .entries
                .iter()
                .map(|e| format!("{} : {} {}\n", e.vertex, e.value, if e.nonzero { "nonzero" } else { "zero" }))
                .collect();
            r.block("cokernels", &lines);
        }
    }
    Ok(r)
}

pub fn action_check(cfg: &RunConfig) -> Result<Report, CliError> {
    let k = complex(cfg)?;
    let p = action_prime(cfg, &k)?;
    let ring = SrRing::new(k, p)?;
    let path = cfg.table.as_ref().ok_or_else(|| CliError::Input("no table file given".into()))?;
    let table = SteenrodTable::parse(&ring, &read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let bound = cfg.degree_bound.unwrap_or_else(|| default_degree_bound(p));
    let rep = check_action(&table, cfg.relations.unwrap_or_default(), bound)?;
    let (outcome, status) = if rep.passes() { (Outcome::Positive, "pass") } else { (Outcome::Negative, "fail") };
    let mut r = Report::new("action-check", outcome, status);
    r.field("p", p)
        .field("relations", rep.relations.relations.name())
        .field("degree bound", bound)
        .field("instances", rep.relations.instances);
    let body = rep.to_text();
    let violations: String = body.lines().filter(|l| l.starts_with("violation")).map(|l| format!("{l}\n")).collect();
    r.block("violations", &violations);
    Ok(r)
}

pub fn necessary(cfg: &RunConfig) -> Result<Report, CliError> {
    let f = family(cfg)?;
    let g = graph(cfg)?;
    let p = cfg
        .p
        .or_else(|| f.prime())
        .ok_or_else(|| CliError::Input("no prime given".into()))?;
    let rep = necessary_condition(&f, &g, p)?;
    let (outcome, status) = if rep.passes {
        (Outcome::Inconclusive, "pass (inconclusive)")
    } else {
        (Outcome::Negative, "fail: no unstable action")
    };
    let mut r = Report::new("necessary", outcome, status);
    r.field("family", &f)
        .field(&format!("s_{p}chi"), rep.span_chromatic)
        .field("bound", rep.bound)
        .block("witness", &rep.witness.to_text(&g));
    Ok(r)
}

fn scheme_for(cfg: &RunConfig, f: &Family) -> Result<Scheme, CliError> {
    match (&cfg.scheme, f) {
        (Some(s), _) => Ok(s.parse()?),
        (None, Family::A { .. } | Family::Ap { .. }) => Ok(Scheme::A),
        (None, Family::Bp { .. } | Family::B { .. }) => Ok(Scheme::B),
        (None, _) => Err(CliError::Input("cannot infer a scheme; pass --scheme".into())),
    }
}

pub fn partition(cfg: &RunConfig) -> Result<Report, CliError> {
    let f = family(cfg)?;
    let k = build_complex(&f, &graph(cfg)?)?;
    let scheme = scheme_for(cfg, &f)?;
    let (chi, coloring) = chromatic_number(k.graph());
    let n = f.uniform_size().ok_or_else(|| CliError::Input(format!("{f} does not have equal block sizes")))?;
    if chi > n {
        let mut r = Report::new("partition", Outcome::Inconclusive, format!("not applicable: chi = {chi} exceeds block size {n}"));
        r.field("chi", chi);
        return Ok(r);
    }
    let part = partition_from_coloring(&k, &coloring, scheme)?;
    let ok = verify_partition(&k, &part, scheme)?;
    let (outcome, status) = if ok { (Outcome::Positive, "verified") } else { (Outcome::Negative, "failed verification") };
    let mut r = Report::new("partition", outcome, status);
    r.field("scheme", format!("{scheme:?}")).field("chi", chi).block("blocks", &part.to_text(&k));
    Ok(r)
}

pub fn decompose(cfg: &RunConfig) -> Result<Report, CliError> {
    let s = parse_vector(cfg.vector.as_deref().ok_or_else(|| CliError::Input("no vector given".into()))?)?;
    let c = match cfg.c {
        Some(c) => c,
        None => chromatic_number(&graph(cfg)?).0,
    };
    let csv = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let Some(d) = decompose_s(&s, c) else {
        let mut r = Report::new("decompose", Outcome::Negative, "no decomposition");
        r.field("s", csv(&s)).field("c", c);
        return Ok(r);
    };
    let mut r = Report::new("decompose", Outcome::Positive, "found");
    r.field("s", csv(&s)).field("c", c).field("s'", csv(&d.s_prime)).field("s''", csv(&d.s_double_prime));
    if cfg.graph.is_some() && cfg.c.is_none() {
        let f = Family::A { s: s.clone() };
        let k = build_complex(&f, &graph(cfg)?)?;
        let (_, coloring) = chromatic_number(k.graph());
        let part = partition_from_decomposition(&k, &d, &coloring)?;
        let ok = verify_partition_with_family(&k, &part, &multiset_family(cfg)?)?;
        r.field("partition verified", ok).block("blocks", &part.to_text(&k));
    }
    Ok(r)
}

fn multiset_family(cfg: &RunConfig) -> Result<DegreeMultisetFamily, CliError> {
    match &cfg.multisets {
        Some(path) => DegreeMultisetFamily::parse(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => Ok(DegreeMultisetFamily::default()),
    }
}

pub fn multiset(cfg: &RunConfig, degrees: &str) -> Result<Report, CliError> {
    let m: Vec<u32> = degrees
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|d| d.parse().map_err(|_| CliError::Input(format!("bad degree `{d}`"))))
        .collect::<Result<_, _>>()?;
    let fam = multiset_family(cfg)?;
    let shown = m.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    match sr_chroma::realize::multiset_decomposable(&m, &fam)? {
        Some(parts) => {
            let lines: String = parts
                .iter()
                .map(|p| format!("{{{}}}\n", p.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")))
                .collect();
            let mut r = Report::new("multiset", Outcome::Positive, "decomposable");
            r.field("multiset", shown).block("parts", &lines);
            Ok(r)
        }
        None => {
            let mut r = Report::new("multiset", Outcome::Negative, "not decomposable");
            r.field("multiset", shown);
            Ok(r)
        }
    }
}

pub fn realizable(cfg: &RunConfig) -> Result<Report, CliError> {
    let f = family(cfg)?;
    let k = build_complex(&f, &graph(cfg)?)?;
    let v = check_realizable(&k, &multiset_family(cfg)?)?;
    let outcome = match v.status {
        Status::CertifiedRealizable => Outcome::Positive,
        Status::CertifiedNotRealizable => Outcome::Negative,
        Status::Inconclusive => Outcome::Inconclusive,
    };
    let mut r = Report::new("realizable", outcome, v.status.to_string());
    r.field("family", &v.family).field("chi", v.chromatic_number);
    if let Some(c) = &v.certificate {
        r.field("certificate", format!("partition via {}", c.method));
        if let Some(d) = &c.decomposition {
            r.field("s'", format!("{:?}", d.s_prime)).field("s''", format!("{:?}", d.s_double_prime));
        }
        let blocks: String = c
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| format!("V_{} = {{{}}}\n", i + 1, b.join(", ")))
            .collect();
        r.block("blocks", &blocks);
    }
    if !v.witnesses.is_empty() {
        let lines: String = v.witnesses.iter().map(|w| format!("{}\n", w.to_text())).collect();
        r.block("witnesses", &lines);
    }
    if !v.notes.is_empty() {
        r.block("notes", &v.notes.join("\n"));
    }
    Ok(r)
}
