//! Minimal static SVG bar chart for the two-forecast comparison.

/// Renders a grouped two-series bar chart over `categories`, values in
/// [0, 1]. Output is deterministic for identical inputs.
pub fn grouped_bar_svg(
    title: &str,
    categories: &[&str],
    series_a: (&str, &[f64]),
    series_b: (&str, &[f64]),
) -> String {
    assert_eq!(categories.len(), series_a.1.len());
    assert_eq!(categories.len(), series_b.1.len());

    const WIDTH: f64 = 720.0;
    const HEIGHT: f64 = 420.0;
    const LEFT: f64 = 60.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 56.0;
    const BOTTOM: f64 = 48.0;
    const COLOR_A: &str = "#3465a4";
    const COLOR_B: &str = "#c17d11";

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let groups = categories.len() as f64;
    let group_w = plot_w / groups;
    let bar_w = group_w * 0.32;
    let y = |v: f64| TOP + plot_h * (1.0 - v.clamp(0.0, 1.0));

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n  <text x=\"{}\" \
         y=\"24\" text-anchor=\"middle\" font-size=\"15\">{title}</text>\n",
        WIDTH / 2.0
    ));

    // Horizontal gridlines every 0.25.
    for i in 0..=4 {
        let v = i as f64 * 0.25;
        let gy = y(v);
        svg.push_str(&format!(
            "  <line x1=\"{LEFT}\" y1=\"{gy:.1}\" x2=\"{:.1}\" y2=\"{gy:.1}\" \
             stroke=\"#dddddd\"/>\n  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\" \
             font-size=\"11\">{v:.2}</text>\n",
            WIDTH - RIGHT,
            LEFT - 8.0,
            gy + 4.0
        ));
    }

    for (i, category) in categories.iter().enumerate() {
        let x0 = LEFT + group_w * i as f64 + group_w / 2.0;
        for (offset, value, color) in [
            (-bar_w, series_a.1[i], COLOR_A),
            (0.0, series_b.1[i], COLOR_B),
        ] {
            let by = y(value);
            svg.push_str(&format!(
                "  <rect x=\"{:.1}\" y=\"{by:.1}\" width=\"{bar_w:.1}\" height=\"{:.1}\" \
                 fill=\"{color}\"/>\n  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" \
                 font-size=\"10\">{value:.3}</text>\n",
                x0 + offset,
                (TOP + plot_h - by).max(0.0),
                x0 + offset + bar_w / 2.0,
                by - 4.0
            ));
        }
        svg.push_str(&format!(
            "  <text x=\"{x0:.1}\" y=\"{:.1}\" text-anchor=\"middle\" \
             font-size=\"12\">{category}</text>\n",
            HEIGHT - BOTTOM + 18.0
        ));
    }

    // Legend.
    for (i, (name, color)) in [(series_a.0, COLOR_A), (series_b.0, COLOR_B)]
        .iter()
        .enumerate()
    {
        let lx = LEFT + 10.0 + 230.0 * i as f64;
        svg.push_str(&format!(
            "  <rect x=\"{lx}\" y=\"34\" width=\"12\" height=\"12\" fill=\"{color}\"/>\n  <text \
             x=\"{:.1}\" y=\"44\" font-size=\"11\">{name}</text>\n",
            lx + 16.0
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_is_deterministic_and_well_formed() {
        let values_a = [0.55, 1.0, 1.0];
        let values_b = [1.0, 1.0, 1.0];
        let one = grouped_bar_svg(
            "t",
            &["PSI", "GSS", "HSS"],
            ("a", &values_a),
            ("b", &values_b),
        );
        let two = grouped_bar_svg(
            "t",
            &["PSI", "GSS", "HSS"],
            ("a", &values_a),
            ("b", &values_b),
        );
        assert_eq!(one, two);
        assert!(one.starts_with("<svg"));
        assert!(one.ends_with("</svg>\n"));
        assert_eq!(one.matches("<rect").count(), 1 + 6 + 2); // background, bars, legend
    }
}
