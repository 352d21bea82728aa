//! Text and LaTeX rendering of partition-indexed polynomials (`e_λ`, `p_λ`).

use crate::partition::Partition;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// `p1*p2^2`
    Text,
    /// `p_{1} p_{2}^{2}`
    Latex,
    /// `p_{122}`: one subscript listing the parts in ascending order.
    LatexShorthand,
}

/// Order in which the factors of a product are written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorOrder {
    Ascending,
    Descending,
}

pub fn render_partition_poly(p: &Poly, symbol: &str, style: Style, order: FactorOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative_display();
        let text = c.balanced_string();
        let magnitude = text.trim_start_matches('-').to_string();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let part = Partition::from_monomial(m);
        let body = render_monomial(&part, symbol, style, order);
        match (body.is_empty(), magnitude.as_str()) {
            (true, _) => out.push_str(&magnitude),
            (false, "1") => out.push_str(&body),
            (false, _) => {
                out.push_str(&magnitude);
                out.push_str(if style == Style::Text { "*" } else { " " });
                out.push_str(&body);
            }
        }
    }
    out
}

fn render_monomial(part: &Partition, symbol: &str, style: Style, order: FactorOrder) -> String {
    if part.is_empty() {
        return String::new();
    }
    if style == Style::LatexShorthand {
        return format!("{symbol}_{{{}}}", part.shorthand());
    }
    let mut distinct: Vec<u32> = part.parts().to_vec();
    distinct.dedup();
    if order == FactorOrder::Ascending {
        distinct.reverse();
    }
    let factors: Vec<String> = distinct
        .iter()
        .map(|&i| {
            let e = part.multiplicity(i);
            match (style, e) {
                (Style::Text, 1) => format!("{symbol}{i}"),
                (Style::Text, _) => format!("{symbol}{i}^{e}"),
                (_, 1) => format!("{symbol}_{{{i}}}"),
                (_, _) => format!("{symbol}_{{{i}}}^{{{e}}}"),
            }
        })
        .collect();
    factors.join(if style == Style::Text { "*" } else { " " })
}
