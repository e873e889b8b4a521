//! Standalone SVG charts of evaluation results.
//!
//! `bands`: horizontal score axis, one lane per alternative; crisp scores are
//! drawn as a vertical `<line>`, interval scores as a filled `<rect>`. Axes and
//! ticks are `<path>` elements so the line and rect counts identify the lanes.
//!
//! `lines`: each score drawn as a function of `I` across the configured bounds.
//!
//! Output depends only on the inputs; coordinates are printed with two decimals.

use std::fmt::Write as _;

use crate::interval::Interval;
use crate::value::NeutroValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotMode {
    Bands,
    Lines,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub width: f64,
    pub lane_height: f64,
    pub margin_left: f64,
    pub margin_right: f64,
    pub margin_top: f64,
    pub margin_bottom: f64,
    /// Height of the plotting area in `lines` mode.
    pub chart_height: f64,
}

impl Default for PlotSpec {
    fn default() -> Self {
        PlotSpec {
            width: 720.0,
            lane_height: 44.0,
            margin_left: 64.0,
            margin_right: 120.0,
            margin_top: 40.0,
            margin_bottom: 48.0,
            chart_height: 320.0,
        }
    }
}

/// Scores and labels to draw.
#[derive(Debug, Clone)]
pub struct PlotData<'a> {
    pub title: &'a str,
    pub ids: Vec<&'a str>,
    pub scores: &'a [NeutroValue],
    pub intervals: &'a [Interval],
    pub selected: Option<usize>,
    pub i_min: f64,
    pub i_max: f64,
}

/// Padded range covering every value, with at least 5% of the span on each side.
pub fn axis_range(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) =
        values.into_iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let span = hi - lo;
    let pad = if span > 0.0 { span * 0.1 } else { (lo.abs() * 0.1).max(1.0) };
    (lo - pad, hi + pad)
}

/// Affine map from data values to pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub data_lo: f64,
    pub data_hi: f64,
    pub px_lo: f64,
    pub px_hi: f64,
}

impl Axis {
    pub fn map(&self, v: f64) -> f64 {
        self.px_lo + (v - self.data_lo) / (self.data_hi - self.data_lo) * (self.px_hi - self.px_lo)
    }
}

impl PlotSpec {
    /// Horizontal score axis used by `bands` mode.
    pub fn band_axis(&self, intervals: &[Interval]) -> Axis {
        let (data_lo, data_hi) = axis_range(intervals.iter().flat_map(|i| [i.lo(), i.hi()]));
        Axis { data_lo, data_hi, px_lo: self.margin_left, px_hi: self.width - self.margin_right }
    }

    fn band_height(&self, lanes: usize) -> f64 {
        self.margin_top + self.lane_height * lanes as f64 + self.margin_bottom
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let f = raw / mag;
    let nice = if f <= 1.0 {
        1.0
    } else if f <= 2.0 {
        2.0
    } else if f <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<(f64, String)> {
    let step = nice_step(hi - lo);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last)
        .map(|n| {
            let v = n as f64 * step;
            let label = format!("{:.*}", decimals, v + 0.0);
            let label = if label.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
                format!("{:.*}", decimals, 0.0)
            } else {
                label
            };
            (v, label)
        })
        .collect()
}

fn header(out: &mut String, width: f64, height: f64, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="12" style="background:#ffffff">"#
    );
    let _ = writeln!(
        out,
        r#"<text class="title" x="{:.2}" y="24.00" text-anchor="middle" font-size="14">{}</text>"#,
        width / 2.0,
        escape(title)
    );
}

fn interval_label(i: &Interval) -> String {
    if i.is_point() {
        format!("{}", i.lo())
    } else {
        format!("[{}, {}]", i.lo(), i.hi())
    }
}

/// Interval bands, one lane per alternative.
pub fn render_bands(data: &PlotData, spec: &PlotSpec) -> String {
    let lanes = data.intervals.len();
    let height = spec.band_height(lanes);
    let axis = spec.band_axis(data.intervals);
    let axis_y = spec.margin_top + spec.lane_height * lanes as f64;
    let mut out = String::new();
    header(&mut out, spec.width, height, data.title);

    for (j, iv) in data.intervals.iter().enumerate() {
        let selected = data.selected == Some(j);
        let yc = spec.margin_top + spec.lane_height * (j as f64 + 0.5);
        let half = spec.lane_height * 0.35;
        let color = if selected { "#d62728" } else { "#1f77b4" };
        let _ = writeln!(out, r#"<g class="lane" data-id="{}">"#, escape(data.ids[j]));
        let _ = writeln!(
            out,
            r#"<text class="lane-label" x="{:.2}" y="{:.2}" text-anchor="end" dominant-baseline="middle"{}>{}</text>"#,
            spec.margin_left - 8.0,
            yc,
            if selected { r#" font-weight="bold""# } else { "" },
            escape(data.ids[j])
        );
        let (x_lo, x_hi) = (axis.map(iv.lo()), axis.map(iv.hi()));
        if iv.is_point() {
            let _ = writeln!(
                out,
                r#"<line class="score-line" x1="{x_lo:.2}" y1="{:.2}" x2="{x_lo:.2}" y2="{:.2}" stroke="{color}" stroke-width="3" data-value="{}"/>"#,
                yc - half,
                yc + half,
                iv.lo()
            );
        } else {
            let _ = writeln!(
                out,
                r#"<rect class="score-band" x="{x_lo:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{color}" fill-opacity="0.35" stroke="{color}" data-lo="{}" data-hi="{}"/>"#,
                yc - half,
                x_hi - x_lo,
                2.0 * half,
                iv.lo(),
                iv.hi()
            );
        }
        let _ = writeln!(
            out,
            r#"<text class="interval-label" x="{:.2}" y="{:.2}" dominant-baseline="middle">{}{}</text>"#,
            x_hi + 8.0,
            yc,
            escape(&interval_label(iv)),
            if selected { " (selected)" } else { "" }
        );
        out.push_str("</g>\n");
    }

    let _ = writeln!(
        out,
        r##"<path class="axis" d="M{:.2} {axis_y:.2} H{:.2}" stroke="#333333" fill="none"/>"##,
        axis.px_lo, axis.px_hi
    );
    let ticks = ticks(axis.data_lo, axis.data_hi);
    let mut d = String::new();
    for (v, _) in &ticks {
        let _ = write!(d, "M{:.2} {axis_y:.2} V{:.2} ", axis.map(*v), axis_y + 5.0);
    }
    let _ = writeln!(out, r##"<path class="ticks" d="{}" stroke="#333333" fill="none"/>"##, d.trim_end());
    for (v, label) in &ticks {
        let _ = writeln!(
            out,
            r#"<text class="tick-label" x="{:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            axis.map(*v),
            axis_y + 18.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="axis-label" x="{:.2}" y="{:.2}" text-anchor="middle">score</text>"#,
        (axis.px_lo + axis.px_hi) / 2.0,
        axis_y + 36.0
    );
    out.push_str("</svg>\n");
    out
}

/// Scores as straight lines over `I ∈ [i_min, i_max]`.
pub fn render_lines(data: &PlotData, spec: &PlotSpec) -> String {
    let (i_lo, i_hi) =
        if data.i_min < data.i_max { (data.i_min, data.i_max) } else { (data.i_min - 0.5, data.i_max + 0.5) };
    let (s_lo, s_hi) = axis_range(data.scores.iter().flat_map(|s| [s.eval(i_lo), s.eval(i_hi)]));
    let x =
        Axis { data_lo: i_lo, data_hi: i_hi, px_lo: spec.margin_left, px_hi: spec.width - spec.margin_right };
    let top = spec.margin_top;
    let bottom = top + spec.chart_height;
    let y = Axis { data_lo: s_lo, data_hi: s_hi, px_lo: bottom, px_hi: top };
    let height = bottom + spec.margin_bottom;

    let mut out = String::new();
    header(&mut out, spec.width, height, data.title);
    let _ = writeln!(
        out,
        r##"<path class="axis" d="M{:.2} {top:.2} V{bottom:.2} H{:.2}" stroke="#333333" fill="none"/>"##,
        x.px_lo, x.px_hi
    );
    let (xt, yt) = (ticks(i_lo, i_hi), ticks(s_lo, s_hi));
    let mut d = String::new();
    for (v, _) in &xt {
        let _ = write!(d, "M{:.2} {bottom:.2} V{:.2} ", x.map(*v), bottom + 5.0);
    }
    for (v, _) in &yt {
        let _ = write!(d, "M{:.2} {:.2} H{:.2} ", x.px_lo - 5.0, y.map(*v), x.px_lo);
    }
    let _ = writeln!(out, r##"<path class="ticks" d="{}" stroke="#333333" fill="none"/>"##, d.trim_end());
    for (v, label) in &xt {
        let _ = writeln!(
            out,
            r#"<text class="tick-label" x="{:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            x.map(*v),
            bottom + 18.0
        );
    }
    for (v, label) in &yt {
        let _ = writeln!(
            out,
            r#"<text class="tick-label" x="{:.2}" y="{:.2}" text-anchor="end" dominant-baseline="middle">{label}</text>"#,
            x.px_lo - 8.0,
            y.map(*v)
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="axis-label" x="{:.2}" y="{:.2}" text-anchor="middle">I</text>"#,
        (x.px_lo + x.px_hi) / 2.0,
        bottom + 36.0
    );

    for (j, s) in data.scores.iter().enumerate() {
        let selected = data.selected == Some(j);
        let color = if selected { "#d62728" } else { "#1f77b4" };
        let (y0, y1) = (y.map(s.eval(i_lo)), y.map(s.eval(i_hi)));
        let _ = writeln!(
            out,
            r#"<polyline class="score-fn" data-id="{}" points="{:.2},{y0:.2} {:.2},{y1:.2}" stroke="{color}" stroke-width="2" fill="none"/>"#,
            escape(data.ids[j]),
            x.px_lo,
            x.px_hi
        );
        let _ = writeln!(
            out,
            r#"<text class="lane-label" x="{:.2}" y="{y1:.2}" dominant-baseline="middle">{} = {}</text>"#,
            x.px_hi + 8.0,
            escape(data.ids[j]),
            escape(&crate::rating::format_rating(s))
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn render(data: &PlotData, spec: &PlotSpec, mode: PlotMode) -> String {
    match mode {
        PlotMode::Bands => render_bands(data, spec),
        PlotMode::Lines => render_lines(data, spec),
    }
}
