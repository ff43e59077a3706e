use std::path::Path;

use poset_spaces::choquet_mf::{mf_characterization_check, CanonicalStrategy, CharacterizationOptions, ConditionError};
use poset_spaces::constructions::formal_ball::parse_rational;
use poset_spaces::constructions::{
    gdelta_mf_poset, gdelta_uf_poset, open_subspace_uf, precompact_open_poset, product_poset, FormalBallPoset,
};
use poset_spaces::domain::{filter_completion, ideal_completion, scott_max_homeomorphism_check, Dcpo};
use poset_spaces::filters::{classify_filter, enumerate_filters, extend_to_maximal, upward_closure, FilterKind};
use poset_spaces::finite_space::FiniteTopSpace;
use poset_spaces::games::baire::{bintree_generic_chain, finite_generic_maximal, is_dense};
use poset_spaces::games::star::{parse_bits, StarStrategyI};
use poset_spaces::games::{
    choquet_referee, star_game_referee, star_game_solve, CanonicalII, GameError, Player, RandomPlayerI,
    SplittingStrategy,
};
use poset_spaces::generated::{BinaryTree, FiniteView, GeneratedPoset};
use poset_spaces::poset::{ElemSet, FinitePoset};
use poset_spaces::semi_topogenous::{
    check_axioms_and_generation, completeness_check, condition_one_scan, interval_order, mf_poset_from_order,
    order_from_poset, SemiTopogenousError, SubsetOrder,
};
use poset_spaces::text::{read_input_file, write_poset, write_subset_order, InputFile, TextError};
use poset_spaces::topology::{
    reduce_countable_subposet, restriction_homeomorphism_check, separation_check, Mode, PointSet, PosetSpace,
};
use thiserror::Error;

use crate::report::Report;
use crate::{Cli, Command, DomainCheck, OrderCheck, SpaceCheck};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Text(#[from] TextError),
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Filters {
            file,
            kind,
            classify,
            extend,
            dual,
            incompatible,
        } => filters(file, *kind, classify, extend, *dual, *incompatible),
        Command::Space {
            file,
            mode,
            check,
            basis,
            subset,
        } => space(file, *mode, *check, basis.as_deref(), subset.as_deref()),
        Command::Product { files, output } => product(files, output.as_deref()),
        Command::Gdelta {
            file,
            opens,
            mode,
            open_subspace,
        } => gdelta(file, opens, *mode, *open_subspace),
        Command::Formalballs {
            file,
            max_denom,
            max_radius,
        } => formalballs(file, *max_denom, max_radius, cli.budget),
        Command::Stargame { file } => stargame(file),
        Command::StargamePlay { poset, f, rounds } => stargame_play(poset, f, *rounds, cli.budget),
        Command::Choquet {
            file,
            mode,
            rounds,
            games,
        } => choquet(file, *mode, *rounds, *games, cli.seed),
        Command::MfCharacterize { file, play_cap } => mf_characterize(file, cli.depth, *play_cap, cli.seed),
        Command::Domain { file, check, ideal } => domain(file, *check, *ideal),
        Command::TopoOrder { file, check, .. } => topo_order(file, *check),
        Command::Baire {
            poset,
            dense,
            start,
            rounds,
        } => baire(poset, dense, start.as_deref(), *rounds),
    }
}

fn load_poset(path: &Path) -> Result<FinitePoset> {
    match read_input_file(path)? {
        InputFile::Poset(p) => Ok(p),
        other => Err(usage(format!(
            "{}: expected a poset file, found a {} file",
            path.display(),
            other.kind()
        ))),
    }
}

/// Parses `a,b,c` against the poset's element names.
fn elems(poset: &FinitePoset, list: &str) -> Result<ElemSet> {
    let ids: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if ids.is_empty() {
        return Err(usage(format!("empty element list {list:?}")));
    }
    poset.set_of(&ids).map_err(usage)
}

fn header(r: &mut Report, p: &FinitePoset) {
    r.kv("poset", p.name());
    r.kv("elements", p.len());
}

fn filters(
    file: &Path,
    kind: FilterKind,
    classify: &[String],
    extend: &[String],
    dual: bool,
    incompatible: bool,
) -> Result<Report> {
    let mut p = load_poset(file)?;
    if dual {
        p = p.dual();
    }
    let mut r = Report::new();
    header(&mut r, &p);
    if incompatible {
        for a in 0..p.len() {
            for b in (a + 1)..p.len() {
                if p.incompatible(a, b) {
                    r.line(format!("{} ⊥ {}", p.element(a), p.element(b)));
                }
            }
        }
    }
    let list = enumerate_filters(&p, kind);
    r.kv("kind", format!("{kind:?}").to_lowercase());
    r.kv("count", list.len());
    for f in &list {
        r.line(f.display(&p));
    }
    for set in classify {
        let s = elems(&p, set)?;
        let c = classify_filter(&p, &s).map_err(usage)?;
        r.line(format!(
            "classify {}: filter {} unbounded {} maximal {}",
            p.format_set(&s),
            c.is_filter,
            c.is_unbounded,
            c.is_maximal
        ));
    }
    for set in extend {
        let s = elems(&p, set)?;
        let up = upward_closure(&p, &s).map_err(usage)?;
        let m = extend_to_maximal(&p, &up).map_err(usage)?;
        r.line(format!("extend {}: {}", p.format_set(&s), m.display(&p)));
    }
    let maximal = enumerate_filters(&p, FilterKind::Maximal);
    let unbounded = enumerate_filters(&p, FilterKind::Unbounded);
    r.check(
        "maximal filters are principal at minimal elements",
        maximal.len() == p.minimal_elements().len(),
        || format!("{} maximal filters, {} minimal elements", maximal.len(), p.minimal_elements().len()),
    );
    let missing = maximal.iter().find(|m| !unbounded.contains(m));
    r.check("maximal filters are unbounded", missing.is_none(), || {
        missing.map(|m| m.display(&p).to_string()).unwrap_or_default()
    });
    Ok(r)
}

fn space(file: &Path, mode: Mode, check: SpaceCheck, basis: Option<&str>, subset: Option<&str>) -> Result<Report> {
    let p = match read_input_file(file)? {
        InputFile::Poset(p) => p,
        InputFile::Space(s) => return precompact(&s),
        InputFile::Metric(_) => return Err(usage("space expects a poset or space file")),
    };
    let sp = PosetSpace::new(p.clone(), mode);
    let mut r = Report::new();
    r.kv("space", format!("{}({})", mode.to_string().to_uppercase(), p.name()));
    r.kv("points", sp.len());
    for i in 0..sp.len() {
        r.line(format!("point {} = {}", sp.point_name(i), sp.point(i).display(&p)));
    }
    for e in 0..p.len() {
        r.line(format!("N_{} = {}", p.element(e), sp.format_points(&sp.basic_open(e))));
    }
    match check {
        SpaceCheck::None => {}
        SpaceCheck::Separation => {
            let s = separation_check(&sp);
            r.kv("t0", s.t0);
            r.kv("t1", s.t1);
            r.kv("uf_equals_mf", s.uf_equals_mf);
            let ok = match mode {
                Mode::Mf => s.t1,
                Mode::Uf => s.t0 && (!s.t1 || s.uf_equals_mf),
            };
            if !ok {
                r.fail(format!("separation property fails for {mode}"));
            }
        }
        SpaceCheck::Reduction => {
            let seed = match basis {
                Some(list) => elems(&p, list)?,
                None => p.all(),
            };
            let red = reduce_countable_subposet(&p, &seed, None).map_err(usage)?;
            for (i, st) in red.stages.iter().enumerate() {
                r.line(format!("stage {i}: {}", p.format_set(st)));
            }
            r.kv("subset", p.format_set(&red.subset));
            r.kv("stabilized", red.stabilized);
            let witness = red.report.counterexample.clone().unwrap_or_default();
            r.check("homeomorphism", red.report.ok, || witness);
        }
        SpaceCheck::Restriction => {
            let list = subset.ok_or_else(|| usage("--check restriction needs --subset"))?;
            let s = elems(&p, list)?;
            let rep = restriction_homeomorphism_check(&p, &s);
            for (i, img) in rep.table.iter().enumerate() {
                let img = img.map_or_else(|| "none".to_string(), |j| j.to_string());
                r.line(format!("{} ↦ {img}", sp.point_name(i)));
            }
            let witness = rep.counterexample.clone().unwrap_or_default();
            r.check("homeomorphism", rep.ok, || witness);
        }
    }
    Ok(r)
}

fn precompact(s: &FiniteTopSpace) -> Result<Report> {
    let pc = precompact_open_poset(s);
    let mut r = Report::new();
    r.kv("space", s.name());
    r.kv("points", s.len());
    r.kv("poset of opens", pc.poset.len());
    r.kv("hausdorff", pc.report.hausdorff);
    for (i, x) in pc.report.intersections.iter().enumerate() {
        r.line(format!("filter {i}: ⋂ = {}", s.format_subset(*x)));
    }
    if pc.report.hausdorff {
        r.check("homeomorphism", pc.report.homeomorphism(), || {
            format!(
                "singletons {} bijective {} opens {}",
                pc.report.singletons, pc.report.bijective, pc.report.opens_correspond
            )
        });
    } else {
        r.kv("homeomorphism", pc.report.homeomorphism());
    }
    Ok(r)
}

fn product(files: &[std::path::PathBuf], output: Option<&Path>) -> Result<Report> {
    let factors: Vec<FinitePoset> = files.iter().map(|f| load_poset(f)).collect::<Result<_>>()?;
    let prod = product_poset(&factors).map_err(usage)?;
    let rep = prod.verify();
    let mut r = Report::new();
    r.kv("product", prod.poset.name());
    r.kv("elements", prod.poset.len());
    r.kv(
        "factor mf counts",
        rep.factor_mf_counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
    );
    r.kv("product mf count", rep.product_mf_count);
    for (tuple, img) in &rep.phi {
        let t: Vec<String> = tuple.iter().map(|c| c.to_string()).collect();
        let img = img.map_or_else(|| "none".to_string(), |j| j.to_string());
        r.line(format!("φ({}) = {img}", t.join(",")));
    }
    r.check("mutually inverse", rep.mutually_inverse, || "φ and φ⁻¹ disagree".into());
    r.check("opens preserved", rep.opens_preserved, || "basic opens do not correspond".into());
    let expected: usize = rep.factor_mf_counts.iter().product();
    r.check("count multiplies", rep.product_mf_count == expected, || {
        format!("{} points, expected {expected}", rep.product_mf_count)
    });
    if let Some(out) = output {
        std::fs::write(out, write_poset(&prod.poset)).map_err(|e| usage(format!("{}: {e}", out.display())))?;
        r.kv("written", out.display());
    }
    Ok(r)
}

fn parse_open(sp: &PosetSpace, arg: &str) -> Result<(String, PointSet)> {
    let (name, list) = arg
        .split_once('=')
        .ok_or_else(|| usage(format!("--open expects NAME=a,b,…, got {arg:?}")))?;
    let gens = elems(sp.poset(), list)?;
    Ok((name.to_string(), sp.open_generated_by(&gens)))
}

fn gdelta(file: &Path, specs: &[String], mode: Mode, open_subspace: bool) -> Result<Report> {
    let p = load_poset(file)?;
    if specs.is_empty() {
        return Err(usage("gdelta needs at least one --open"));
    }
    let sp = PosetSpace::new(p.clone(), if open_subspace { Mode::Uf } else { mode });
    let named: Vec<(String, PointSet)> = specs.iter().map(|s| parse_open(&sp, s)).collect::<Result<_>>()?;
    let mut r = Report::new();
    header(&mut r, &p);
    for (name, o) in &named {
        r.line(format!("open {name} = {}", sp.format_points(o)));
    }
    let opens: Vec<PointSet> = named.into_iter().map(|(_, o)| o).collect();
    if open_subspace {
        if opens.len() != 1 {
            return Err(usage("--open-subspace takes exactly one --open"));
        }
        let os = open_subspace_uf(&p, &opens[0]).map_err(usage)?;
        r.kv("subposet", p.format_set(&os.subset));
        for &(x, y) in &os.table {
            let y = y.map_or_else(|| "none".to_string(), |j| j.to_string());
            r.line(format!("{} ↦ {y}", sp.point_name(x)));
        }
        r.check("bijective", os.bijective, || "points do not correspond".into());
        r.check("opens correspond", os.opens_correspond, || "basic opens differ".into());
        return Ok(r);
    }
    match mode {
        Mode::Mf => {
            let q = gdelta_mf_poset(&p, &opens).map_err(usage)?;
            let rep = q.verify(&p);
            r.kv("target", sp.format_points(&q.target));
            r.kv("Q elements", q.poset.len());
            for &(x, y) in &rep.table {
                let y = y.map_or_else(|| "none".to_string(), |j| j.to_string());
                r.line(format!("{} ↦ {y}", sp.point_name(x)));
            }
            let failure = rep.failure.clone().unwrap_or_default();
            r.check("homeomorphism", rep.ok(), || failure);
        }
        Mode::Uf => {
            let g = gdelta_uf_poset(&p, &opens).map_err(usage)?;
            r.kv("target", sp.format_points(&g.target));
            for e in 0..p.len() {
                r.line(format!("g({}) = {}", p.element(e), g.rank[e]));
            }
            r.kv("R", p.format_set(&g.subset));
            r.line(write_poset(&g.poset).trim_end());
            let claims = g.verify_claims(&p);
            r.kv("filters_restrict", claims.filters_restrict);
            r.kv("finite_rank_bounded", claims.finite_rank_bounded);
            r.kv("bounded_stays_bounded", claims.bounded_stays_bounded);
            r.kv("unbounded_lift", claims.unbounded_lift);
            let failures = claims.failures.join("; ");
            r.check("same points", claims.ok(), || failures);
        }
    }
    Ok(r)
}

fn formalballs(file: &Path, max_denom: i64, max_radius: &str, budget: usize) -> Result<Report> {
    let metric = match read_input_file(file)? {
        InputFile::Metric(m) => m,
        other => return Err(usage(format!("expected a metric file, found a {} file", other.kind()))),
    };
    let radius = parse_rational(max_radius).ok_or_else(|| usage(format!("bad radius {max_radius:?}")))?;
    let fb = FormalBallPoset::new(metric, max_denom, radius).map_err(usage)?;
    let mut r = Report::new();
    r.kv("metric", fb.metric().name());
    r.kv("points", fb.metric().len());
    r.kv("grid denominator", fb.grid_denom(budget));
    r.kv("grid balls", fb.grid_balls(budget).len());
    const CHAIN: usize = 32;
    for x in 0..fb.metric().len() {
        let name = &fb.metric().points()[x];
        match fb.separation_index(x, CHAIN) {
            Some(j) => {
                let ball = fb.point_chain(x, j + 1)[j];
                r.line(format!("{name}: separated at {}", fb.encode(&ball)));
            }
            None => r.line(format!("{name}: not separated within {CHAIN} balls")),
        }
    }
    let bad = fb.check_transitivity(budget);
    r.check("transitive", bad.is_none(), || {
        let (a, b, c) = bad.unwrap();
        format!("{} ≺ {} ≺ {}", fb.encode(&a), fb.encode(&b), fb.encode(&c))
    });
    Ok(r)
}

fn stargame(file: &Path) -> Result<Report> {
    let p = load_poset(file)?;
    let sol = star_game_solve(&p);
    let mut r = Report::new();
    header(&mut r, &p);
    r.kv("winner", sol.winner);
    r.kv("fixed point", p.format_set(&sol.fixed_point));
    for e in 0..p.len() {
        let stage = sol.removal_stage[e].map_or_else(|| "never".to_string(), |s| s.to_string());
        r.line(format!("removed {}: {stage}", p.element(e)));
    }
    if let Some((a, b)) = sol.opening {
        r.kv("opening", format!("⟨{},{}⟩", p.element(a), p.element(b)));
    }
    r.line("strategy II:");
    for (a, b, n) in sol.ii_table(&p) {
        r.line(format!("⟨{},{}⟩ → {n}", p.element(a), p.element(b)));
    }
    if sol.winner == Player::I {
        r.fail("player I wins on a finite poset");
    }
    Ok(r)
}

/// Player I on a finite poset: the first incompatible pair below the current
/// element. When none exists it repeats the current element, which the
/// referee rejects.
struct FirstPair {
    stuck: Option<usize>,
}

impl StarStrategyI<FiniteView<'_>> for FirstPair {
    fn name(&self) -> String {
        "first-pair".into()
    }

    fn play(&mut self, view: &FiniteView<'_>, current: Option<&usize>, round: usize) -> (usize, usize) {
        let p = view.0;
        let below = |e: usize| current.is_none_or(|&c| p.le(e, c));
        for a in (0..p.len()).filter(|&a| below(a)) {
            for b in ((a + 1)..p.len()).filter(|&b| below(b)) {
                if p.incompatible(a, b) {
                    return (a, b);
                }
            }
        }
        self.stuck = Some(round);
        let c = current.copied().unwrap_or(0);
        (c, c)
    }
}

fn stargame_play(poset: &str, f: &str, rounds: usize, budget: usize) -> Result<Report> {
    let bits = parse_bits(f).ok_or_else(|| usage(format!("--f expects a 0/1 string, got {f:?}")))?;
    let mut r = Report::new();
    if poset == "bintree" {
        r.kv("poset", "bintree");
        let play = star_game_referee(&BinaryTree, &mut SplittingStrategy, &bits, rounds, budget).map_err(game_usage)?;
        for l in &play.log {
            r.line(l);
        }
        let chain: Vec<String> = play.chain.iter().map(|e| BinaryTree.encode(e)).collect();
        r.kv("chain", chain.join(" ⪰ "));
        return Ok(r);
    }
    let p = load_poset(Path::new(poset))?;
    if p.is_empty() {
        return Err(usage("the poset is empty"));
    }
    header(&mut r, &p);
    let view = FiniteView(&p);
    // replay round by round so the transcript survives I getting stuck
    let mut stuck = None;
    let mut last_log = Vec::new();
    let mut last_chain = Vec::new();
    for t in 1..=rounds {
        let mut player = FirstPair { stuck: None };
        match star_game_referee(&view, &mut player, &bits, t, budget) {
            Ok(play) => {
                last_log = play.log;
                last_chain = play.chain;
            }
            Err(GameError::ConditionViolated { round, .. }) if player.stuck.is_some() => {
                stuck = Some(round);
                break;
            }
            Err(e) => return Err(game_usage(e)),
        }
    }
    for l in &last_log {
        r.line(l);
    }
    let chain: Vec<String> = last_chain.iter().map(|e| view.encode(e)).collect();
    r.kv("chain", chain.join(" ⪰ "));
    match stuck {
        Some(t) => {
            r.kv("I has no legal move in round", t);
            r.kv("winner", Player::II);
        }
        None => r.kv("I survives rounds", rounds),
    }
    Ok(r)
}

fn game_usage(e: GameError) -> CliError {
    usage(e)
}

fn choquet(file: &Path, mode: Mode, rounds: usize, games: usize, seed: u64) -> Result<Report> {
    let p = load_poset(file)?;
    let sp = PosetSpace::new(p.clone(), mode);
    if sp.is_empty() {
        return Err(usage("the space has no points"));
    }
    let mut r = Report::new();
    r.kv("space", format!("{}({})", mode.to_string().to_uppercase(), p.name()));
    r.kv("rounds", rounds);
    r.kv("games", games);
    let mut wins = 0;
    for g in 0..games {
        let mut one = RandomPlayerI::new(seed.wrapping_add(g as u64));
        let t = match choquet_referee(&sp, &mut one, &mut CanonicalII, rounds) {
            Ok(t) => t,
            Err(e @ GameError::InvalidSetup(_)) => return Err(usage(e)),
            Err(e) => {
                r.fail(format!("game {g}: {e}"));
                return Ok(r);
            }
        };
        if g == 0 {
            for l in &t.log {
                r.line(l);
            }
            r.kv("⋂U", sp.format_points(&t.intersection_u));
        }
        if t.winner_at_horizon == Player::II {
            wins += 1;
        }
    }
    r.kv("II wins at horizon", wins);
    if wins != games {
        r.fail(format!("II lost {} games", games - wins));
    }
    Ok(r)
}

fn mf_characterize(file: &Path, depth: usize, play_cap: Option<usize>, seed: u64) -> Result<Report> {
    let space = match read_input_file(file)? {
        InputFile::Space(s) => s,
        InputFile::Poset(p) => poset_spaces::semi_topogenous::mf_top_space(&p).map_err(usage)?.0,
        InputFile::Metric(_) => return Err(usage("mf-characterize expects a space or poset file")),
    };
    let options = CharacterizationOptions {
        depth,
        play_cap,
        refinement_limit: 100_000,
        seed,
    };
    let rep = match mf_characterization_check(&space, &CanonicalStrategy, options) {
        Ok(rep) => rep,
        Err(ConditionError::NotT1) => return Err(usage("mf-characterize needs a T1 space")),
        Err(e) => return Err(usage(e)),
    };
    let mut r = Report::new();
    r.kv("space", space.name());
    r.kv("depth", depth);
    r.kv("conditions", rep.condition_count);
    r.kv("maximal filters", rep.minimal_count);
    r.kv("classes", rep.phi.len());
    for (k, &(x, size)) in rep.phi.iter().enumerate() {
        r.line(format!("φ(class {k}) = {} ({size} filters)", space.point(x)));
    }
    r.kv("irreflexive", rep.order_irreflexive);
    r.kv("transitive", rep.order_transitive);
    r.kv("open-set requirement implied", rep.inclusion_implied);
    r.kv("depth sufficient", !rep.depth_too_small);
    r.kv("bijective", rep.bijective);
    r.kv("opens correspond", rep.opens_correspond);
    r.kv("refinement triples checked", format!("{}/{}", rep.refinement_checked, rep.refinement_total));
    r.check("verified", rep.ok(), || format!("{} refinement failures", rep.refinement_failures));
    Ok(r)
}

fn domain(file: &Path, check: DomainCheck, ideal: bool) -> Result<Report> {
    let p = load_poset(file)?;
    let mut r = Report::new();
    header(&mut r, &p);
    match check {
        DomainCheck::Lemma => {
            let rep = scott_max_homeomorphism_check(&p);
            let comp = filter_completion(&p);
            let mf = PosetSpace::new(p.clone(), Mode::Mf);
            for &(x, e) in &rep.table {
                r.line(format!("{} ↦ {}", mf.point_name(x), comp.dcpo.poset().element(e)));
            }
            r.kv("families match", rep.families_match);
            r.check("homeomorphism", rep.ok(), || "generated topologies differ".into());
        }
        DomainCheck::WayBelow => {
            let d = Dcpo::new(p.clone()).map_err(usage)?;
            for e in 0..p.len() {
                r.line(format!("⇓{} = {}", p.element(e), p.format_set(&d.way_below_set(e))));
            }
            let class = d.classify();
            r.kv("compact", p.format_set(&class.compact_elements));
            r.kv("basis", p.format_set(&class.minimal_basis));
            r.kv("algebraic", class.is_algebraic);
            r.check("continuous", class.is_continuous, || "no basis found".into());
        }
        DomainCheck::Completion => {
            let c = if ideal { ideal_completion(&p) } else { filter_completion(&p) };
            let d = c.dcpo.poset();
            let source = if ideal { p.dual() } else { p.clone() };
            r.kv("completion", d.name());
            r.kv("size", d.len());
            for (e, f) in c.filters.iter().enumerate() {
                r.line(format!("{} = {}", d.element(e), f.display(&source)));
            }
            for (a, b) in d.cover_pairs() {
                r.line(format!("{} ⊂ {}", d.element(a), d.element(b)));
            }
            r.check("maximal elements are maximal filters", c.maximal_match, || "mismatch".into());
            r.check("compact elements are principal", c.compact_match, || "mismatch".into());
        }
    }
    Ok(r)
}

fn topo_order(file: &Path, check: OrderCheck) -> Result<Report> {
    match read_input_file(file)? {
        InputFile::Space(s) => order_from_space(&s, check),
        InputFile::Poset(p) => order_from_poset_report(&p),
        InputFile::Metric(_) => Err(usage("topo-order expects a space or poset file")),
    }
}

fn axioms_and_completeness(r: &mut Report, order: &SubsetOrder, check: OrderCheck) {
    if matches!(check, OrderCheck::All | OrderCheck::Axioms) {
        let ax = check_axioms_and_generation(order);
        let v = ax.violations.join("; ");
        r.check("axioms", ax.axioms_ok, || v.clone());
        r.check("generates topology", ax.generates, || v);
    }
    if matches!(check, OrderCheck::All | OrderCheck::Completeness) {
        let c = completeness_check(order);
        r.kv("meeting filters", c.meeting_filters);
        r.check("complete", c.complete, || {
            c.witness.map(|w| order.space().format_subset(w)).unwrap_or_default()
        });
    }
}

fn order_from_space(s: &FiniteTopSpace, check: OrderCheck) -> Result<Report> {
    let order = interval_order(s).map_err(usage)?;
    let mut r = Report::new();
    r.kv("space", s.name());
    r.kv("points", s.len());
    r.line(write_subset_order(&order).trim_end());
    axioms_and_completeness(&mut r, &order, check);
    if matches!(check, OrderCheck::All | OrderCheck::Poset) {
        match mf_poset_from_order(&order) {
            Ok(op) => {
                r.kv("poset elements", op.poset.len());
                for (x, phi) in op.phi.iter().enumerate() {
                    let img = phi.map_or_else(|| "none".to_string(), |j| j.to_string());
                    r.line(format!("φ({}) = {img}", s.point(x)));
                }
                r.check("bijective", op.bijective, || "φ is not a bijection".into());
                r.check("equivalences", op.equivalences_hold, || "membership tests disagree".into());
                r.check("maximal filters meet the order", op.maximal_filters_meet, || "a maximal filter misses".into());
            }
            Err(SemiTopogenousError::HypothesisFailed(why)) => r.kv("poset", format!("skipped ({why})")),
            Err(e) => return Err(usage(e)),
        }
    }
    Ok(r)
}

fn order_from_poset_report(p: &FinitePoset) -> Result<Report> {
    let mut r = Report::new();
    header(&mut r, p);
    let scan = condition_one_scan(p);
    r.kv("order condition", scan.holds());
    match order_from_poset(p) {
        Ok(po) => {
            r.kv("points", po.order.space().len());
            r.line(write_subset_order(&po.order).trim_end());
            let v = po.axioms.violations.join("; ");
            r.check("axioms", po.axioms.axioms_ok, || v.clone());
            r.check("generates topology", po.axioms.generates, || v);
            r.check("complete", po.completeness.complete, || "meeting filter without a common point".into());
        }
        Err(e @ SemiTopogenousError::ConditionFailed { .. }) => r.fail(e),
        Err(e) => return Err(usage(e)),
    }
    Ok(r)
}

fn baire(poset: &str, dense: &[String], start: Option<&str>, rounds: usize) -> Result<Report> {
    let mut r = Report::new();
    if poset == "bintree" {
        let chain = bintree_generic_chain(rounds).map_err(usage)?;
        r.kv("poset", "bintree");
        r.kv("chain", chain.display(&BinaryTree));
        let ok = chain.chain().iter().enumerate().all(|(i, e)| e.len() >= i);
        r.check("meets every dense set", ok, || "chain stalls".into());
        return Ok(r);
    }
    let p = load_poset(Path::new(poset))?;
    if p.is_empty() {
        return Err(usage("the poset is empty"));
    }
    header(&mut r, &p);
    let sets: Vec<ElemSet> = if dense.is_empty() {
        vec![p.minimal_elements().into_iter().collect()]
    } else {
        dense.iter().map(|d| elems(&p, d)).collect::<Result<_>>()?
    };
    for s in &sets {
        if !is_dense(&p, s) {
            return Err(usage(format!("{} is not dense", p.format_set(s))));
        }
    }
    let start = match start {
        Some(id) => p.index_of(id).map_err(usage)?,
        None => p.maximal_elements()[0],
    };
    let g = finite_generic_maximal(&p, &sets, start, rounds).map_err(usage)?;
    let chain: Vec<&str> = g.chain.iter().map(|&e| p.element(e)).collect();
    r.kv("chain", chain.join(" ⪰ "));
    r.kv("maximal filter", g.maximal.display(&p));
    r.check("meets every dense set", g.meets_all, || "a dense set is missed".into());
    Ok(r)
}
