//! CSV tables, SVG figures and the checksum manifest of an audit run.
//!
//! Layout of a bundle:
//!
//! ```text
//! run_info.txt
//! tables/*.csv                     aggregate tables and full-precision sidecars
//! tables/diagnostics/*.csv         histogram and QQ data per sample
//! figures/<level>/<topic>.svg      per-topic NDCG-Senti scatter (+ .csv)
//! figures/overall/<level>_*.svg    per-topic bar charts (+ .csv)
//! manifest.txt                     path \t sha256, one line per file above
//! ```
//!
//! Summary tables print values at 4 decimals; sidecars use the shortest
//! round-trip representation of each `f64`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::audit::{AuditResults, Metric, SignificanceRow, TopicScatter};
use crate::corpus::Engine;
use crate::metrics::{Level, OverallMean, ScatterCounts, TopicAggregate};
use crate::sentiment::sha256_hex;
use crate::stats::{histogram, qq_points, Sample};

pub const MANIFEST: &str = "manifest.txt";
pub const TABLE_POLARITY: &str = "tables/mean_avg_polarity.csv";
pub const TABLE_NDCG: &str = "tables/mean_ndcg_senti.csv";
pub const TABLE_SIGNIFICANCE: &str = "tables/significance.csv";
pub const SIGNIFICANCE_HEADER: &str = "Dataset,p-value,Is Statistically Significant?";

const SCATTER_SIZE: f64 = 800.0;
const SCATTER_MARGIN: f64 = 90.0;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("incomplete run: {0}")]
    IncompleteRun(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

/// Display names of the two engines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineNames {
    pub a: String,
    pub b: String,
}

impl EngineNames {
    pub fn get(&self, engine: Engine) -> &str {
        match engine {
            Engine::A => &self.a,
            Engine::B => &self.b,
        }
    }
}

impl Default for EngineNames {
    fn default() -> Self {
        EngineNames { a: "Engine A".into(), b: "Engine B".into() }
    }
}

/// Files of one run, keyed by relative path.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReportBundle {
    pub run_id: String,
    pub config_checksum: String,
    files: BTreeMap<String, Vec<u8>>,
}

impl ReportBundle {
    pub fn new(run_id: impl Into<String>, config_checksum: impl Into<String>) -> Self {
        ReportBundle { run_id: run_id.into(), config_checksum: config_checksum.into(), files: BTreeMap::new() }
    }

    pub fn add(&mut self, path: impl Into<String>, contents: impl Into<Vec<u8>>) {
        self.files.insert(path.into(), contents.into());
    }

    pub fn extend(&mut self, files: Vec<(String, String)>) {
        for (p, c) in files {
            self.add(p, c);
        }
    }

    pub fn get(&self, path: &str) -> Option<&[u8]> {
        self.files.get(path).map(Vec::as_slice)
    }

    pub fn paths(&self) -> impl Iterator<Item = &str> {
        self.files.keys().map(String::as_str)
    }

    pub fn tables(&self) -> impl Iterator<Item = (&str, &[u8])> {
        self.with_prefix("tables/")
    }

    pub fn figures(&self) -> impl Iterator<Item = (&str, &[u8])> {
        self.with_prefix("figures/").filter(|(p, _)| p.ends_with(".svg"))
    }

    fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a [u8])> + 'a {
        self.files
            .iter()
            .filter(move |(p, _)| p.starts_with(prefix))
            .map(|(p, c)| (p.as_str(), c.as_slice()))
    }

    /// `path \t sha256` per file, path order.
    pub fn manifest(&self) -> String {
        let mut out = String::new();
        for (path, contents) in &self.files {
            let _ = writeln!(out, "{path}\t{}", sha256_hex(contents));
        }
        out
    }

    /// Write every file plus the manifest under `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<(), ReportError> {
        let io_err = |path: &Path| {
            let path = path.display().to_string();
            move |source| ReportError::Io { path, source }
        };
        for (rel, contents) in &self.files {
            let path = dir.join(rel);
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent).map_err(io_err(parent))?;
            }
            fs::write(&path, contents).map_err(io_err(&path))?;
        }
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let manifest = dir.join(MANIFEST);
        fs::write(&manifest, self.manifest()).map_err(io_err(&manifest))
    }
}

/// Fixed 4-decimal formatting used by the summary tables.
pub fn fmt4(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// Shortest round-trip formatting used by sidecars.
pub fn fmt_full(v: f64) -> String {
    format!("{v}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn verdict(significant: bool) -> &'static str {
    if significant {
        "YES"
    } else {
        "NO"
    }
}

fn overall_table(
    overall: &[OverallMean],
    names: &EngineNames,
    value: impl Fn(&OverallMean) -> f64,
) -> Result<String, ReportError> {
    let mut levels: Vec<Level> = overall.iter().map(|o| o.level).collect();
    levels.dedup();
    let mut out = format!("Sentiment-level,{},{}\n", csv_field(&names.a), csv_field(&names.b));
    for level in levels {
        let cell = |engine: Engine| {
            overall
                .iter()
                .find(|o| o.level == level && o.engine == engine)
                .map(|o| fmt4(value(o)))
                .ok_or_else(|| ReportError::IncompleteRun(format!("{} has no engine {engine} mean", level.label())))
        };
        let _ = writeln!(out, "{},{},{}", level.label(), cell(Engine::A)?, cell(Engine::B)?);
    }
    Ok(out)
}

/// Mean-polarity, mean-NDCG-Senti and significance tables.
pub fn emit_aggregate_tables(
    overall: &[OverallMean],
    significance: &[SignificanceRow],
    names: &EngineNames,
) -> Result<Vec<(String, String)>, ReportError> {
    if overall.is_empty() {
        return Err(ReportError::IncompleteRun("no aggregates".into()));
    }
    if significance.is_empty() {
        return Err(ReportError::IncompleteRun("no significance results".into()));
    }
    let mut sig = format!("{SIGNIFICANCE_HEADER}\n");
    for row in significance {
        let _ = writeln!(
            sig,
            "{},{},{}",
            row.dataset(),
            fmt4(row.report.t_test.p_value),
            verdict(row.report.significant)
        );
    }
    Ok(vec![
        (TABLE_POLARITY.into(), overall_table(overall, names, |o| o.mean_avg_polarity)?),
        (TABLE_NDCG.into(), overall_table(overall, names, |o| o.mean_ndcg_senti)?),
        (TABLE_SIGNIFICANCE.into(), sig),
    ])
}

fn scatter_svg(title: &str, names: &EngineNames, pairs: &[(String, f64, f64)], counts: ScatterCounts) -> String {
    let lo = SCATTER_MARGIN;
    let hi = SCATTER_SIZE - SCATTER_MARGIN;
    let span = hi - lo;
    let px = |v: f64| lo + v.clamp(0.0, 1.0) * span;
    let py = |v: f64| hi - v.clamp(0.0, 1.0) * span;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 800" width="800" height="800">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="800" height="800" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="400" y="40" text-anchor="middle" font-family="sans-serif" font-size="22">{}</text>"#,
        xml_escape(title)
    );
    let _ = writeln!(
        s,
        r#"<rect class="axes" x="{lo:.2}" y="{lo:.2}" width="{span:.2}" height="{span:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r##"<line class="diagonal" x1="{lo:.2}" y1="{hi:.2}" x2="{hi:.2}" y2="{lo:.2}" stroke="#888888" stroke-dasharray="6,4"/>"##
    );
    for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let (x, y) = (px(tick), py(tick));
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{hi:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, hi + 6.0);
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{y:.2}" x2="{lo:.2}" y2="{y:.2}" stroke="black"/>"#, lo - 6.0);
    }
    let _ = writeln!(
        s,
        r#"<text x="400" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="16">{} NDCG-Senti</text>"#,
        hi + 45.0,
        xml_escape(&names.a)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="400" text-anchor="middle" font-family="sans-serif" font-size="16" transform="rotate(-90 {:.2} 400)">{} NDCG-Senti</text>"#,
        lo - 40.0,
        lo - 40.0,
        xml_escape(&names.b)
    );
    for (_, a, b) in pairs {
        let _ = writeln!(
            s,
            r##"<circle class="point" cx="{:.2}" cy="{:.2}" r="5" fill="#1f77b4" fill-opacity="0.7"/>"##,
            px(*a),
            py(*b)
        );
    }
    let legend = [("above", counts.above), ("below", counts.below), ("on", counts.on)];
    for (i, (name, n)) in legend.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text class="legend" x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="15">{name} = {n}</text>"#,
            lo + 12.0,
            lo + 22.0 + 20.0 * i as f64
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Scatter of paired per-query NDCG-Senti values for one topic, with its
/// CSV sidecar. Returns `[(svg path, svg), (csv path, csv)]`.
pub fn emit_topic_scatter(
    topic_id: &str,
    topic_title: &str,
    level: Level,
    pairs: &[(String, f64, f64)],
    counts: ScatterCounts,
    names: &EngineNames,
) -> Vec<(String, String)> {
    let title = format!("Normalized NDCG-Senti scores of {topic_title} ({})", level.label());
    let svg = scatter_svg(&title, names, pairs, counts);
    let mut csv = format!("query,{},{}\n", csv_field(&names.a), csv_field(&names.b));
    for (q, a, b) in pairs {
        let _ = writeln!(csv, "{},{},{}", csv_field(q), fmt_full(*a), fmt_full(*b));
    }
    let base = format!("figures/{}/{}", level.key(), topic_id);
    vec![(format!("{base}.svg"), svg), (format!("{base}.csv"), csv)]
}

/// Grouped bar chart: one group per topic, one bar per engine.
///
/// `rows` holds `(topic_id, value A, value B)` in display order.
pub fn emit_overall_bars(
    name: &str,
    title: &str,
    rows: &[(String, f64, f64)],
    names: &EngineNames,
) -> Vec<(String, String)> {
    let cells: Vec<(String, String, String)> =
        rows.iter().map(|(t, a, b)| (t.clone(), fmt_full(*a), fmt_full(*b))).collect();

    let mut csv = format!("topic_id,{},{}\n", csv_field(&names.a), csv_field(&names.b));
    for (t, a, b) in &cells {
        let _ = writeln!(csv, "{},{a},{b}", csv_field(t));
    }

    let group_w = 60.0;
    let bar_w = 22.0;
    let left = 80.0;
    let top = 70.0;
    let plot_h = 320.0;
    let width = left + 40.0 + group_w * rows.len().max(1) as f64;
    let height = top + plot_h + 170.0;
    let lo = rows.iter().flat_map(|(_, a, b)| [*a, *b]).fold(0.0f64, f64::min);
    let hi = rows.iter().flat_map(|(_, a, b)| [*a, *b]).fold(0.0f64, f64::max);
    let range = if hi > lo { hi - lo } else { 1.0 };
    let y_of = |v: f64| top + (hi - v) / range * plot_h;
    let zero = y_of(0.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.0} {height:.0}" width="{width:.0}" height="{height:.0}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="30" text-anchor="middle" font-family="sans-serif" font-size="18">{}</text>"#,
        width / 2.0,
        xml_escape(title)
    );
    let _ = writeln!(
        s,
        r#"<line class="baseline" x1="{left:.2}" y1="{zero:.2}" x2="{:.2}" y2="{zero:.2}" stroke="black"/>"#,
        width - 40.0
    );
    let colors = ["#1f77b4", "#ff7f0e"];
    for (i, ((topic, a, b), (_, sa, sb))) in rows.iter().zip(&cells).enumerate() {
        let gx = left + group_w * i as f64 + (group_w - 2.0 * bar_w) / 2.0;
        for (j, (v, label)) in [(*a, sa), (*b, sb)].into_iter().enumerate() {
            let y = y_of(v.max(0.0));
            let h = (y_of(v.min(0.0)) - y).abs();
            let _ = writeln!(
                s,
                r#"<rect class="bar" data-topic="{}" data-engine="{}" data-value="{label}" x="{:.2}" y="{y:.2}" width="{bar_w:.2}" height="{h:.2}" fill="{}"/>"#,
                xml_escape(topic),
                if j == 0 { "A" } else { "B" },
                gx + bar_w * j as f64,
                colors[j]
            );
        }
        let lx = gx + bar_w;
        let ly = top + plot_h + 12.0;
        let _ = writeln!(
            s,
            r#"<text x="{lx:.2}" y="{ly:.2}" text-anchor="end" font-family="sans-serif" font-size="12" transform="rotate(-60 {lx:.2} {ly:.2})">{}</text>"#,
            xml_escape(topic)
        );
    }
    for (j, engine) in [&names.a, &names.b].iter().enumerate() {
        let y = top - 30.0 + 16.0 * j as f64;
        let _ = writeln!(s, r#"<rect x="{left:.2}" y="{:.2}" width="12" height="12" fill="{}"/>"#, y - 10.0, colors[j]);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{y:.2}" font-family="sans-serif" font-size="13">{}</text>"#,
            left + 18.0,
            xml_escape(engine)
        );
    }
    s.push_str("</svg>\n");

    vec![(format!("figures/overall/{name}.svg"), s), (format!("figures/overall/{name}.csv"), csv)]
}

fn aggregate_rows(aggregates: &[TopicAggregate], level: Level, value: impl Fn(&TopicAggregate) -> f64) -> Vec<(String, f64, f64)> {
    let mut rows: BTreeMap<&str, [f64; 2]> = BTreeMap::new();
    for agg in aggregates.iter().filter(|a| a.level == level) {
        rows.entry(&agg.topic_id).or_insert([0.0; 2])[agg.engine.index()] = value(agg);
    }
    rows.into_iter().map(|(t, [a, b])| (t.to_string(), a, b)).collect()
}

fn bins_for(n: usize) -> usize {
    // Sturges
    (usize::BITS - n.max(1).leading_zeros()) as usize + 1
}

fn diagnostics(row: &SignificanceRow) -> Vec<(String, String)> {
    let dataset = row.dataset();
    let mut hist = String::from("engine,bin_lower,count\n");
    let mut qq = String::from("engine,theoretical_quantile,sample_quantile\n");
    let samples: [(&str, &Sample); 2] = [("A", &row.samples.0), ("B", &row.samples.1)];
    for (engine, sample) in samples {
        if let Ok(bins) = histogram(sample, bins_for(sample.len())) {
            for bin in bins {
                let _ = writeln!(hist, "{engine},{},{}", fmt_full(bin.lower), bin.count);
            }
        }
        for (t, v) in qq_points(sample) {
            let _ = writeln!(qq, "{engine},{},{}", fmt_full(t), fmt_full(v));
        }
    }
    vec![
        (format!("tables/diagnostics/{dataset}_histogram.csv"), hist),
        (format!("tables/diagnostics/{dataset}_qq.csv"), qq),
    ]
}

fn opt_full(v: Option<f64>) -> String {
    v.map(fmt_full).unwrap_or_default()
}

/// Metadata that identifies a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunInfo {
    pub run_id: String,
    pub config_checksum: String,
    pub lexicon_checksum: String,
    pub names: EngineNames,
    /// Topic titles by id, used in figure titles.
    pub topic_titles: BTreeMap<String, String>,
}

/// Assemble every artifact of an audit run.
pub fn build_bundle(results: &AuditResults, info: &RunInfo) -> Result<ReportBundle, ReportError> {
    let names = &info.names;
    let mut bundle = ReportBundle::new(&info.run_id, &info.config_checksum);

    let levels: Vec<&str> = results.settings.levels.iter().map(|l| l.key()).collect();
    bundle.add(
        "run_info.txt",
        format!(
            "run_id\t{}\nconfig_checksum\t{}\nlexicon_sha256\t{}\nlevels\t{}\ngain\t{}\nalpha\t{}\nengine_a\t{}\nengine_b\t{}\n",
            info.run_id,
            info.config_checksum,
            info.lexicon_checksum,
            levels.join(","),
            results.settings.gain.key(),
            fmt_full(results.settings.alpha),
            names.a,
            names.b
        ),
    );

    bundle.extend(emit_aggregate_tables(&results.overall, &results.significance, names)?);

    let mut dist = format!("Topic,{},{}\n", csv_field(&names.a), csv_field(&names.b));
    for row in &results.distribution {
        let _ = writeln!(dist, "{},{},{}", csv_field(&row.topic_id), row.per_engine[0], row.per_engine[1]);
    }
    bundle.add("tables/topic_distribution.csv", dist);

    let mut aggs = String::from("level,topic_id,engine,queries,degenerate_slates,mean_avg_polarity,mean_ndcg_senti\n");
    for a in &results.aggregates {
        let _ = writeln!(
            aggs,
            "{},{},{},{},{},{},{}",
            a.level.key(),
            csv_field(&a.topic_id),
            a.engine,
            a.queries,
            a.degenerate_slates,
            fmt_full(a.mean_avg_polarity),
            fmt_full(a.mean_ndcg_senti)
        );
    }
    bundle.add("tables/topic_aggregates.csv", aggs);

    let mut overall = String::from("level,engine,topics,mean_avg_polarity,mean_ndcg_senti\n");
    for o in &results.overall {
        let _ = writeln!(
            overall,
            "{},{},{},{},{}",
            o.level.key(),
            o.engine,
            o.topics,
            fmt_full(o.mean_avg_polarity),
            fmt_full(o.mean_ndcg_senti)
        );
    }
    bundle.add("tables/overall_means.csv", overall);

    let mut slates = String::from("level,engine,topic_id,query,degenerate,mean_transformed,ndcg_senti,raw,normalized\n");
    for (level, scores) in &results.slate_scores {
        for (s, n) in scores.iter().zip(&results.slate_ndcg[level]) {
            let raw: Vec<String> = s.raw.iter().map(|p| fmt_full(p.value())).collect();
            let norm: Vec<String> = s.normalized.iter().map(|v| fmt_full(*v)).collect();
            let _ = writeln!(
                slates,
                "{},{},{},{},{},{},{},{},{}",
                level.key(),
                s.engine,
                csv_field(&s.topic_id),
                csv_field(&s.query),
                s.degenerate,
                fmt_full(s.mean_transformed()),
                fmt_full(*n),
                raw.join(" "),
                norm.join(" ")
            );
        }
    }
    bundle.add("tables/slate_scores.csv", slates);

    let mut details = String::from(
        "dataset,sample_a,sample_b,n_a,n_b,transform,normality_satisfied,jb_a,jb_p_a,jb_b,jb_p_b,f,f_df_num,f_df_den,f_p,equal_variance,t,df,p,significant\n",
    );
    for row in &results.significance {
        let r = &row.report;
        let _ = writeln!(
            details,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.dataset(),
            csv_field(&r.sample_labels.0),
            csv_field(&r.sample_labels.1),
            r.sizes.0,
            r.sizes.1,
            r.transform_used,
            r.normality_satisfied,
            opt_full(r.normality[0].map(|n| n.statistic)),
            opt_full(r.normality[0].map(|n| n.p_value)),
            opt_full(r.normality[1].map(|n| n.statistic)),
            opt_full(r.normality[1].map(|n| n.p_value)),
            fmt_full(r.f_test.f),
            fmt_full(r.f_test.df_num),
            fmt_full(r.f_test.df_den),
            fmt_full(r.f_test.p_value),
            r.f_test.equal_variance,
            fmt_full(r.t_test.t),
            fmt_full(r.t_test.df),
            fmt_full(r.t_test.p_value),
            verdict(r.significant)
        );
        bundle.extend(diagnostics(row));
    }
    bundle.add("tables/significance_details.csv", details);

    let mut counts = String::from("level,topic_id,above,below,on\n");
    for sc in &results.scatter {
        let _ = writeln!(
            counts,
            "{},{},{},{},{}",
            sc.level.key(),
            csv_field(&sc.topic_id),
            sc.counts.above,
            sc.counts.below,
            sc.counts.on
        );
        bundle.extend(scatter_files(sc, info));
    }
    bundle.add("tables/scatter_counts.csv", counts);

    for &level in &results.settings.levels {
        let pol = aggregate_rows(&results.aggregates, level, |a| a.mean_avg_polarity);
        bundle.extend(emit_overall_bars(
            &format!("{}_avg_polarity", level.key()),
            &format!("Mean avg-polarity per topic ({})", level.label()),
            &pol,
            names,
        ));
        let ndcg = aggregate_rows(&results.aggregates, level, |a| a.mean_ndcg_senti);
        bundle.extend(emit_overall_bars(
            &format!("{}_ndcg_senti", level.key()),
            &format!("Avg normalized NDCG-Senti per topic ({})", level.label()),
            &ndcg,
            names,
        ));
    }

    Ok(bundle)
}

fn scatter_files(sc: &TopicScatter, info: &RunInfo) -> Vec<(String, String)> {
    let title = info.topic_titles.get(&sc.topic_id).map(String::as_str).unwrap_or(&sc.topic_id);
    emit_topic_scatter(&sc.topic_id, title, sc.level, &sc.pairs, sc.counts, &info.names)
}

/// Tables 3/4/5-style plain-text summary for standard output.
pub fn summary_text(results: &AuditResults, names: &EngineNames) -> String {
    let mut out = String::new();
    let width = names.a.len().max(names.b.len()).max(8);
    for (title, metric) in [
        ("Mean of mean average sentiment scores", Metric::MeanAvgScore),
        ("Mean average NDCG-Senti scores", Metric::AvgNdcgScore),
    ] {
        let _ = writeln!(out, "{title}");
        let _ = writeln!(out, "  {:<16} {:>width$} {:>width$}", "Sentiment-level", names.a, names.b);
        for &level in &results.settings.levels {
            let pick = |e: Engine| {
                results
                    .overall
                    .iter()
                    .find(|o| o.level == level && o.engine == e)
                    .map(|o| match metric {
                        Metric::MeanAvgScore => o.mean_avg_polarity,
                        Metric::AvgNdcgScore => o.mean_ndcg_senti,
                    })
                    .map(fmt4)
                    .unwrap_or_default()
            };
            let _ = writeln!(out, "  {:<16} {:>width$} {:>width$}", level.label(), pick(Engine::A), pick(Engine::B));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "Two-tail t-test p-values");
    let _ = writeln!(out, "  {:<24} {:>8}  Is Statistically Significant?", "Dataset", "p-value");
    for row in &results.significance {
        let _ = writeln!(
            out,
            "  {:<24} {:>8}  {}",
            row.dataset(),
            fmt4(row.report.t_test.p_value),
            verdict(row.report.significant)
        );
    }
    out
}
