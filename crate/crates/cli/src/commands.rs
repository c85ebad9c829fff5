use num_bigint::{BigInt, BigUint, Sign};
use rathom_core::fourfold::{
    closed_table, loop_hilbert, low_degree_table, ranks_lie, IntersectionForm, RankTable,
};
use rathom_core::gauge::{
    cohomology_presentation, consistency_report, loop_presentation, simply_connected_status, BundleContext, Parity,
    Pi1, RingPresentation, SimpleGroup, Space, SpaceConsistency,
};
use serde_json::{json, Map, Value};

use crate::document::{count_value, text_table, Document};
use crate::{BundleArgs, Cli, Command, Failure, FormArgs, Method, ParityArg, SpaceArg};

pub fn dispatch(cli: Cli) -> Result<Document, Failure> {
    match cli.command {
        Command::Ranks { form, max, method } => ranks(&form, max, method),
        Command::Loops { form, max } => loops(&form, max),
        Command::Gauge { bundle, space, max, assume_simply_connected } => {
            gauge(&bundle, space, max, assume_simply_connected)
        }
        Command::Check { group: Some(group), b2, max } => check_gauge(&group, b2, max),
        Command::Check { group: None, b2, max } => check_ranks(b2, max),
    }
}

fn betti(b2: i64) -> Result<u32, Failure> {
    if b2 < 0 {
        return Err(Failure::Input(format!("b2 must be non-negative (got {b2})")));
    }
    u32::try_from(b2).map_err(|_| Failure::Input(format!("b2 = {b2} is out of range")))
}

fn intersection_form(args: &FormArgs) -> Result<IntersectionForm, Failure> {
    let b2 = betti(args.b2)?;
    Ok(IntersectionForm::from_signature(b2, args.sig.unwrap_or(b2 as i64))?)
}

fn query(command: &str) -> Map<String, Value> {
    let mut q = Map::new();
    q.insert("command".into(), command.into());
    q
}

fn form_query(q: &mut Map<String, Value>, form: IntersectionForm) {
    q.insert("b2".into(), form.b2().into());
    q.insert("sig".into(), form.signature().into());
}

fn form_value(form: IntersectionForm) -> Value {
    json!({ "b2_plus": form.b2_plus, "b2_minus": form.b2_minus })
}

fn signature_note(form: IntersectionForm) -> String {
    format!("rational results depend only on b2; the split {form} does not change them")
}

fn rank_rows(table: &RankTable) -> Value {
    table.ranks.iter().map(|(k, r)| json!({ "k": k, "rank": count_value(r) })).collect()
}

fn all_agree(tables: &[RankTable]) -> bool {
    tables.iter().all(|a| tables.iter().all(|b| a.agrees_with(b)))
}

/// Per-degree consensus over the tables, plus a text rendering with one
/// column per method.
fn rank_summary(tables: &[RankTable], max: u32, labels: &[String]) -> (Value, String) {
    let mut consensus = Vec::new();
    let mut rows = Vec::new();
    for k in 2..=max {
        let values: Vec<Option<&BigUint>> = tables.iter().map(|t| t.get(k)).collect();
        if let Some(v) = values.iter().flatten().next() {
            consensus.push(json!({ "k": k, "rank": count_value(v) }));
        }
        let mut row = vec![format!("π_{k}")];
        row.extend(values.iter().map(|v| v.map_or_else(|| String::from("-"), BigUint::to_string)));
        rows.push(row);
    }
    let mut header = vec!["k"];
    header.extend(labels.iter().map(String::as_str));
    (Value::Array(consensus), text_table(&header, &rows))
}

fn ranks(args: &FormArgs, max: u32, method: Method) -> Result<Document, Failure> {
    let form = intersection_form(args)?;
    let b2 = form.b2();
    let mut doc = Document::new(query("ranks"));
    form_query(&mut doc.query, form);
    doc.query.insert("max".into(), max.into());
    let method_name = match method {
        Method::Lie => "lie",
        Method::Closed => "closed",
        Method::All => "all",
    };
    doc.query.insert("method".into(), method_name.into());
    if max < 2 {
        return Err(Failure::Input(format!("--max must be at least 2 (got {max})")));
    }

    let mut tables = Vec::new();
    if matches!(method, Method::Lie | Method::All) {
        match ranks_lie(form, max) {
            Ok(t) => tables.push(t),
            Err(e) if e.is_resource() && method == Method::All && b2 >= 2 => {
                doc.warn(format!("lie-model route skipped: {e}"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    if matches!(method, Method::Closed | Method::All) {
        if b2 >= 2 {
            tables.push(closed_table(b2, max)?);
            if method == Method::All {
                tables.push(low_degree_table(b2, max)?);
            }
        } else if method == Method::Closed {
            return Err(Failure::Input(format!(
                "closed formulas are gated to b2 >= 2 (got {b2}); use --method lie"
            )));
        } else {
            doc.warn(format!("closed formulas are gated to b2 >= 2 (got {b2}); ranks come from the lie-model route only"));
        }
    }
    doc.warn(signature_note(form));

    let labels: Vec<String> = tables.iter().map(|t| t.method.as_str().to_string()).collect();
    let (consensus, mut text) = rank_summary(&tables, max, &labels);
    let agreement = (tables.len() > 1).then(|| all_agree(&tables));
    let methods: Map<String, Value> =
        tables.iter().map(|t| (t.method.as_str().to_string(), rank_rows(t))).collect();
    doc.result = json!({
        "form": form_value(form),
        "ranks": consensus,
        "methods": methods,
        "agreement": agreement,
    });
    if let Some(a) = agreement {
        text.push_str(if a { "methods agree: yes\n" } else { "methods agree: NO\n" });
    }
    doc.table = text;
    if agreement == Some(false) {
        return Err(Failure::Check(String::from("rank methods disagree"), Some(Box::new(doc))));
    }
    Ok(doc)
}

fn integer_value(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

fn loops(args: &FormArgs, max: u32) -> Result<Document, Failure> {
    let form = intersection_form(args)?;
    let mut doc = Document::new(query("loops"));
    form_query(&mut doc.query, form);
    doc.query.insert("max".into(), max.into());
    let series = loop_hilbert(form, max)?;
    let coefficients = series
        .integer_coefficients()
        .filter(|c| c.iter().all(|v| v.sign() != Sign::Minus))
        .ok_or_else(|| Failure::Check(format!("loop-space series is not a count: {series}"), None))?;
    let rows: Vec<Vec<String>> =
        coefficients.iter().enumerate().map(|(n, c)| vec![n.to_string(), c.to_string()]).collect();
    doc.result = json!({
        "form": form_value(form),
        "series": coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| json!({ "degree": n, "dim": integer_value(c) }))
            .collect::<Vec<_>>(),
        "method": "lie-model",
    });
    doc.table = text_table(&["degree", "dim H_n(ΩM; Q)"], &rows);
    doc.warn(signature_note(form));
    Ok(doc)
}

fn parity(p: ParityArg) -> Parity {
    match p {
        ParityArg::Odd => Parity::Odd,
        ParityArg::Even => Parity::Even,
    }
}

fn parity_name(p: Option<ParityArg>) -> Value {
    match p {
        Some(ParityArg::Odd) => "odd".into(),
        Some(ParityArg::Even) => "even".into(),
        None => Value::Null,
    }
}

fn space_of(s: SpaceArg) -> Space {
    match s {
        SpaceArg::GaugeGroup => Space::GaugeGroup,
        SpaceArg::Btilde => Space::BTilde,
        SpaceArg::Bstar => Space::BStar,
        SpaceArg::LoopBtilde => Space::LoopBTilde,
        SpaceArg::LoopBstar => Space::LoopBStar,
    }
}

fn bundle_context(args: &BundleArgs) -> Result<BundleContext, Failure> {
    let group: SimpleGroup = args.group.parse()?;
    group.validate()?;
    let mut ctx = BundleContext::new(group, betti(args.b2)?);
    if let Some(p) = args.form {
        ctx = ctx.with_form(parity(p));
    }
    if let Some(p) = args.c2 {
        ctx = ctx.with_c2(parity(p));
    }
    Ok(ctx)
}

/// Smallest degree past which every presentation of `group` is empty.
fn exhausting_degree(group: SimpleGroup) -> Result<u32, Failure> {
    let top = group.exponents()?.into_iter().max().unwrap_or(0);
    Ok(2 * top + 4)
}

fn presentation_rows(p: &RingPresentation) -> Value {
    p.generators
        .iter()
        .map(|(d, c)| json!({ "degree": d, "count": c, "kind": p.kind.as_str() }))
        .collect()
}

fn mismatch_warning(report: &SpaceConsistency) -> Option<String> {
    let bad = report.mismatches();
    if bad.is_empty() {
        return None;
    }
    let list: Vec<String> = bad.iter().map(u32::to_string).collect();
    Some(format!(
        "loop-{} counts differ from the {} cohomology counts shifted by one at loop degrees {}; both formulas are reported as stated",
        report.space.as_str(),
        report.space.as_str(),
        list.join(", ")
    ))
}

fn gauge(args: &BundleArgs, space: SpaceArg, max: Option<u32>, assume: bool) -> Result<Document, Failure> {
    let ctx = bundle_context(args)?;
    let space = space_of(space);
    let max = match max {
        Some(m) => m,
        None => exhausting_degree(ctx.group)?,
    };
    let mut doc = Document::new(query("gauge"));
    doc.query.insert("group".into(), ctx.group.to_string().into());
    doc.query.insert("b2".into(), ctx.b2.into());
    doc.query.insert("form".into(), parity_name(args.form));
    doc.query.insert("c2".into(), parity_name(args.c2));
    doc.query.insert("space".into(), space.as_str().into());
    doc.query.insert("max".into(), max.into());
    doc.query.insert("assume_simply_connected".into(), assume.into());

    if ctx.group.is_su2() && space.is_loop() {
        if args.form.is_none() {
            return Err(Failure::Input(format!(
                "{} loop spaces need --form odd|even (π₀ of the gauge group depends on it)",
                ctx.group
            )));
        }
        if space == Space::LoopBStar && args.form == Some(ParityArg::Even) && args.c2.is_none() {
            return Err(Failure::Input(format!(
                "{} over an even form needs --c2 odd|even for loop-bstar (π₁(ℬ*) depends on it)",
                ctx.group
            )));
        }
    }

    let status = simply_connected_status(&ctx);
    let presentation = if space.is_loop() {
        let pi1 = if space == Space::LoopBTilde { status.pi1_btilde } else { status.pi1_bstar };
        if assume && pi1 == Pi1::Z2 {
            doc.warn("base is not simply connected (π₁ = Z2); loop ring computed under --assume-simply-connected");
        }
        loop_presentation(&ctx, space, max, assume)?
    } else {
        cohomology_presentation(&ctx, space, max)?
    };
    for note in &status.notes {
        doc.warn(note.clone());
    }
    if matches!(space, Space::BStar | Space::LoopBStar | Space::BTilde | Space::LoopBTilde) {
        let report = consistency_report(&ctx, max)?;
        let relevant = if matches!(space, Space::BStar | Space::LoopBStar) { &report.bstar } else { &report.btilde };
        if let Some(w) = mismatch_warning(relevant) {
            doc.warn(w);
        }
    }

    let rows: Vec<Vec<String>> =
        presentation.generators.iter().map(|(d, c)| vec![d.to_string(), c.to_string()]).collect();
    let mut text = format!("{} for {}, b2 = {}: {} algebra\n", space.as_str(), ctx.group, ctx.b2, presentation.kind.as_str());
    text.push_str(&text_table(&["degree", "generators"], &rows));
    text.push_str(&format!("total: {}\n", presentation.total()));
    doc.table = text;
    doc.result = json!({
        "group": ctx.group.to_string(),
        "space": space.as_str(),
        "kind": presentation.kind.as_str(),
        "generators": presentation_rows(&presentation),
        "total": presentation.total(),
        "connectivity": {
            "gauge_group_connected": status.gauge_group_connected.as_str(),
            "pi1_btilde": status.pi1_btilde.as_str(),
            "pi1_bstar": status.pi1_bstar.as_str(),
        },
    });
    Ok(doc)
}

fn consistency_value(report: &SpaceConsistency) -> Value {
    json!({
        "comparisons": report
            .comparisons
            .iter()
            .map(|c| json!({
                "loop_degree": c.loop_degree,
                "loop_count": c.loop_count,
                "cohomology_count": c.shifted_cohomology_count,
                "agrees": c.agrees(),
            }))
            .collect::<Vec<_>>(),
        "mismatches": report.mismatches(),
    })
}

fn consistency_rows(report: &SpaceConsistency, rows: &mut Vec<Vec<String>>) {
    for c in &report.comparisons {
        rows.push(vec![
            report.space.as_str().to_string(),
            c.loop_degree.to_string(),
            c.loop_count.to_string(),
            c.shifted_cohomology_count.to_string(),
            if c.agrees() { "yes" } else { "NO" }.to_string(),
        ]);
    }
}

fn check_gauge(group: &str, b2: i64, max: u32) -> Result<Document, Failure> {
    let group: SimpleGroup = group.parse()?;
    group.validate()?;
    let ctx = BundleContext::new(group, betti(b2)?);
    let mut doc = Document::new(query("check"));
    doc.query.insert("group".into(), group.to_string().into());
    doc.query.insert("b2".into(), ctx.b2.into());
    doc.query.insert("max".into(), max.into());
    let report = consistency_report(&ctx, max)?;
    for r in [&report.btilde, &report.bstar] {
        if let Some(w) = mismatch_warning(r) {
            doc.warn(w);
        }
    }
    let mut rows = Vec::new();
    consistency_rows(&report.btilde, &mut rows);
    consistency_rows(&report.bstar, &mut rows);
    doc.table = text_table(&["base", "loop degree", "loop count", "cohomology count (degree + 1)", "agree"], &rows);
    doc.result = json!({
        "btilde": consistency_value(&report.btilde),
        "bstar": consistency_value(&report.bstar),
    });
    Ok(doc)
}

fn check_ranks(b2: i64, max: u32) -> Result<Document, Failure> {
    let b2 = betti(b2)?;
    let mut doc = Document::new(query("check"));
    doc.query.insert("b2".into(), b2.into());
    doc.query.insert("max".into(), max.into());
    if max < 2 {
        return Err(Failure::Input(format!("--max must be at least 2 (got {max})")));
    }
    let mut tables = Vec::new();
    let mut labels = Vec::new();
    for form in IntersectionForm::splits(b2) {
        tables.push(ranks_lie(form, max)?);
        labels.push(format!("lie-model {form}"));
    }
    if b2 >= 2 {
        for t in [closed_table(b2, max)?, low_degree_table(b2, max)?] {
            labels.push(t.method.as_str().to_string());
            tables.push(t);
        }
    } else {
        doc.warn(format!("closed formulas are gated to b2 >= 2 (got {b2}); only signature splits are compared"));
    }
    let agreement = all_agree(&tables);
    let (_, mut text) = rank_summary(&tables, max, &labels);
    text.push_str(if agreement { "methods agree: yes\n" } else { "methods agree: NO\n" });
    doc.table = text;
    doc.result = json!({
        "tables": tables
            .iter()
            .zip(&labels)
            .map(|(t, label)| json!({ "label": label, "method": t.method.as_str(), "ranks": rank_rows(t) }))
            .collect::<Vec<_>>(),
        "agreement": agreement,
    });
    if !agreement {
        return Err(Failure::Check(String::from("rank methods disagree"), Some(Box::new(doc))));
    }
    Ok(doc)
}
