//! SVG strand diagrams, one fixed-width column per letter.
//!
//! Geometry: columns are 40 units wide, strands 30 units apart, with a
//! 20 unit margin. A crossing draws the over-strand as one cubic curve and
//! the under-strand as two pieces of the same curve with the middle 24%
//! removed. For a positive letter (`A`, `B`, and `a` on two strands) the
//! strand entering on the upper row passes over.
//!
//! Each column is a `<g class="column">` and each crossing a
//! `<g class="crossing">`, so diagrams can be checked structurally.

use std::fmt::Write as _;

use crate::braid::{BraidWord, Letter, RuleSet, RuleVariant};
use crate::error::{BraidError, Result};

const COLUMN_WIDTH: f64 = 40.0;
const STRAND_GAP: f64 = 30.0;
const MARGIN: f64 = 20.0;
const UNDER_CUT: (f64, f64) = (0.38, 0.62);

type Point = (f64, f64);

/// Upper strand row and sign of the crossing a letter draws.
fn crossing(letter: Letter, rules: &RuleSet) -> Option<(usize, bool)> {
    match (rules.variant, letter) {
        (_, Letter::Identity) => None,
        (RuleVariant::ThreeStrand, Letter::SigmaPlus1) => Some((0, true)),
        (RuleVariant::ThreeStrand, Letter::SigmaMinus1) => Some((0, false)),
        (RuleVariant::ThreeStrand, Letter::SigmaPlus2) => Some((1, true)),
        (RuleVariant::ThreeStrand, Letter::SigmaMinus2) => Some((1, false)),
        (_, Letter::SigmaMinus1) => Some((0, true)),
        (_, Letter::SigmaMinus2) => Some((0, false)),
        _ => None,
    }
}

fn row_y(row: usize) -> f64 {
    MARGIN + row as f64 * STRAND_GAP
}

fn lerp(p: Point, q: Point, t: f64) -> Point {
    (p.0 + (q.0 - p.0) * t, p.1 + (q.1 - p.1) * t)
}

/// Sub-curve of a cubic Bezier on `[t0, t1]`.
fn sub_cubic(c: [Point; 4], t0: f64, t1: f64) -> [Point; 4] {
    // split at t1, keep the left part, then split that at t0 / t1
    let split = |c: [Point; 4], t: f64| -> ([Point; 4], [Point; 4]) {
        let ab = lerp(c[0], c[1], t);
        let bc = lerp(c[1], c[2], t);
        let cd = lerp(c[2], c[3], t);
        let abc = lerp(ab, bc, t);
        let bcd = lerp(bc, cd, t);
        let m = lerp(abc, bcd, t);
        ([c[0], ab, abc, m], [m, bcd, cd, c[3]])
    };
    let (left, _) = split(c, t1);
    let (_, right) = split(left, t0 / t1);
    right
}

fn path(c: [Point; 4]) -> String {
    format!(
        "<path d=\"M {:.2} {:.2} C {:.2} {:.2} {:.2} {:.2} {:.2} {:.2}\"/>",
        c[0].0, c[0].1, c[1].0, c[1].1, c[2].0, c[2].1, c[3].0, c[3].1
    )
}

fn strand_curve(x0: f64, from_row: usize, to_row: usize) -> [Point; 4] {
    let (y0, y1) = (row_y(from_row), row_y(to_row));
    let xm = x0 + COLUMN_WIDTH / 2.0;
    [(x0, y0), (xm, y0), (xm, y1), (x0 + COLUMN_WIDTH, y1)]
}

fn straight(x0: f64, row: usize) -> String {
    let y = row_y(row);
    format!("<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\"/>", x0, x0 + COLUMN_WIDTH)
}

pub fn render_svg(word: &BraidWord, rules: &RuleSet) -> Result<String> {
    if let Some(index) = word.iter().position(|&l| !rules.contains(l)) {
        return Err(BraidError::Parse { index, symbol: word.letters()[index].as_char() });
    }
    let strands = rules.strands();
    let width = 2.0 * MARGIN + word.len() as f64 * COLUMN_WIDTH;
    let height = 2.0 * MARGIN + (strands - 1) as f64 * STRAND_GAP;

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    )
    .unwrap();
    writeln!(
        out,
        "<g class=\"braid\" data-word=\"{word}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" stroke-linecap=\"round\">"
    )
    .unwrap();

    for (i, &letter) in word.iter().enumerate() {
        let x0 = MARGIN + i as f64 * COLUMN_WIDTH;
        writeln!(out, "<g class=\"column\" data-index=\"{i}\" data-letter=\"{letter}\">").unwrap();
        let cross = crossing(letter, rules);
        for row in 0..strands {
            if cross.is_none_or(|(top, _)| row != top && row != top + 1) {
                writeln!(out, "{}", straight(x0, row)).unwrap();
            }
        }
        if let Some((top, positive)) = cross {
            let down = strand_curve(x0, top, top + 1);
            let up = strand_curve(x0, top + 1, top);
            let (over, under) = if positive { (down, up) } else { (up, down) };
            writeln!(out, "<g class=\"crossing\" data-strands=\"{}-{}\">", top + 1, top + 2).unwrap();
            writeln!(out, "{}", path(over)).unwrap();
            writeln!(out, "{}", path(sub_cubic(under, 0.0, UNDER_CUT.0))).unwrap();
            writeln!(out, "{}", path(sub_cubic(under, UNDER_CUT.1, 1.0))).unwrap();
            out.push_str("</g>\n");
        }
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;

    fn render(s: &str) -> String {
        let r = RuleSet::three_strand();
        render_svg(&parse_word(s, &r).unwrap(), &r).unwrap()
    }

    #[test]
    fn identity_word_has_only_lines() {
        let svg = render("1111");
        assert_eq!(svg.matches("class=\"column\"").count(), 4);
        assert_eq!(svg.matches("class=\"crossing\"").count(), 0);
        assert_eq!(svg.matches("<line").count(), 12);
    }

    #[test]
    fn single_crossing_between_first_strands() {
        let svg = render("A");
        assert_eq!(svg.matches("class=\"crossing\"").count(), 1);
        assert!(svg.contains("data-strands=\"1-2\""));
        // third strand passes straight through
        assert_eq!(svg.matches("<line").count(), 1);
    }

    #[test]
    fn over_strand_differs_by_sign() {
        let a = render("A");
        let lower = render("a");
        assert_ne!(a, lower.replace("data-letter=\"a\"", "data-letter=\"A\""));
    }

    #[test]
    fn sub_cubic_endpoints_lie_on_curve() {
        let c = strand_curve(0.0, 0, 1);
        let whole = sub_cubic(c, 0.0, 1.0);
        for (p, q) in whole.iter().zip(c.iter()) {
            assert!((p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
        }
        let left = sub_cubic(c, 0.0, 0.5);
        let right = sub_cubic(c, 0.5, 1.0);
        assert!((left[3].0 - right[0].0).abs() < 1e-12);
        assert!((left[3].1 - 35.0).abs() < 1e-12);
    }

    #[test]
    fn two_strand_words_use_two_rows() {
        let r = RuleSet::two_strand_inverse();
        let svg = render_svg(&parse_word("ab1", &r).unwrap(), &r).unwrap();
        assert!(svg.contains("height=\"70\""));
        assert_eq!(svg.matches("class=\"crossing\"").count(), 2);
    }

    #[test]
    fn rejects_letters_outside_rules() {
        let w = parse_word("A1", &RuleSet::three_strand()).unwrap();
        assert!(render_svg(&w, &RuleSet::two_strand_inverse()).is_err());
    }
}
