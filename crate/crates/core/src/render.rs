//! Presentation helpers shared by the command-line front end and the C API.

use serde_json::{json, Value};

use crate::algebra_b::{enumerate_b_basis, multiply_basis_b};
use crate::algebra_d::{multiply_basis, product_case, term_for_template};
use crate::composition::{enumerate_basis, subset_of, BasisIndex, Composition};
use crate::error::Result;
use crate::oracle::GroupKind;
use crate::template::{enumerate_z_b, enumerate_z_d, FilledTemplate};

/// Text listing of the admissible templates of a type-D product, one block
/// per template with reading word, border-sum, y-sum, rule case and the
/// contributed term.
pub fn templates_text(p: &BasisIndex, q: &BasisIndex) -> Result<String> {
    let templates = enumerate_z_d(p, q)?;
    let mut out = format!(
        "Z({p}, {q}) at n={}: {} template(s)\n",
        p.rank(),
        templates.len()
    );
    for (idx, t) in templates.iter().enumerate() {
        let contribution = term_for_template(p, q, t)?
            .into_iter()
            .map(|(b, c)| format!("{c}*{b}"))
            .collect::<Vec<_>>()
            .join(" + ");
        out.push_str(&format!(
            "\ntemplate {}:\n{}reading word: {}  border-sum: {}  y-sum: {}  case: {}  -> {}\n",
            idx + 1,
            t.render(),
            t.reading_word(),
            t.border_sum(),
            t.y_sum(),
            product_case(p, q, t),
            contribution
        ));
    }
    Ok(out)
}

pub fn templates_json(p: &BasisIndex, q: &BasisIndex) -> Result<Value> {
    let templates = enumerate_z_d(p, q)?;
    let mut items = Vec::with_capacity(templates.len());
    for t in &templates {
        let contribution: Vec<Value> = term_for_template(p, q, t)?
            .into_iter()
            .map(|(b, c)| json!({ "index": b.to_string(), "c": c }))
            .collect();
        items.push(json!({
            "z": z_rows(t),
            "y": y_rows(t),
            "reading": t.reading_word().to_string(),
            "border_sum": t.border_sum(),
            "y_sum": t.y_sum(),
            "case": product_case(p, q, t).to_string(),
            "contribution": contribution,
        }));
    }
    Ok(json!({
        "p": p.to_string(),
        "q": q.to_string(),
        "n": p.rank(),
        "count": templates.len(),
        "templates": items,
    }))
}

/// Type-B variant: no rule case, each template contributes its reading word.
pub fn templates_text_b(p: &Composition, q: &Composition, n: usize) -> Result<String> {
    let templates = enumerate_z_b(p, q, n)?;
    let mut out = format!("Z_B({p}, {q}) at n={n}: {} template(s)\n", templates.len());
    for (idx, t) in templates.iter().enumerate() {
        out.push_str(&format!(
            "\ntemplate {}:\n{}reading word: {}  border-sum: {}  y-sum: {}  -> 1*{}\n",
            idx + 1,
            t.render(),
            t.reading_word_b(),
            t.border_sum(),
            t.y_sum(),
            t.reading_word_b(),
        ));
    }
    Ok(out)
}

pub fn templates_json_b(p: &Composition, q: &Composition, n: usize) -> Result<Value> {
    let templates = enumerate_z_b(p, q, n)?;
    let items: Vec<Value> = templates
        .iter()
        .map(|t| {
            json!({
                "z": z_rows(t),
                "y": y_rows(t),
                "reading": t.reading_word_b().to_string(),
                "border_sum": t.border_sum(),
                "y_sum": t.y_sum(),
                "contribution": [{ "index": t.reading_word_b().to_string(), "c": 1 }],
            })
        })
        .collect();
    Ok(json!({
        "p": p.to_string(),
        "q": q.to_string(),
        "n": n,
        "count": templates.len(),
        "templates": items,
    }))
}

fn z_rows(t: &FilledTemplate) -> Vec<Vec<usize>> {
    (0..=t.rows())
        .map(|i| (0..=t.cols()).map(|j| t.z(i, j)).collect())
        .collect()
}

fn y_rows(t: &FilledTemplate) -> Vec<Vec<usize>> {
    (1..=t.rows())
        .map(|i| (1..=t.cols()).map(|j| t.y(i, j)).collect())
        .collect()
}

pub fn bijection_text(b: &BasisIndex) -> String {
    let j = subset_of(b);
    format!("J = {j}\nJc = {}", j.complement(b.rank()))
}

pub fn bijection_json(b: &BasisIndex) -> Value {
    let j = subset_of(b);
    let jc = j.complement(b.rank());
    let names = |set: &crate::composition::GeneratorSet| -> Vec<String> {
        let mut out = Vec::new();
        if set.contains_branch() {
            out.push("s_1'".to_string());
        }
        out.extend(set.plain_indices().map(|i| format!("s_{i}")));
        out
    };
    json!({
        "index": b.to_string(),
        "n": b.rank(),
        "class": match b.class() {
            crate::composition::ClassTag::CLess => "C<n",
            crate::composition::ClassTag::C1 => "C1",
            crate::composition::ClassTag::Cn => "Cn",
            crate::composition::ClassTag::CnPrime => "Cn'",
        },
        "J": names(&j),
        "Jc": names(&jc),
    })
}

/// The full multiplication table in canonical order, as aligned text.
pub fn table_text(kind: GroupKind, n: usize) -> Result<String> {
    let mut lines = Vec::new();
    match kind {
        GroupKind::D => {
            let basis = enumerate_basis(n)?;
            let width = basis.iter().map(|b| b.to_string().len()).max().unwrap_or(1);
            for p in &basis {
                for q in &basis {
                    let prod = multiply_basis(p, q)?;
                    lines.push(format!(
                        "{:<width$} * {:<width$} = {}",
                        p.to_string(),
                        q.to_string(),
                        prod.to_text()
                    ));
                }
            }
        }
        GroupKind::B => {
            let basis = enumerate_b_basis(n);
            let width = basis.iter().map(|b| b.to_string().len()).max().unwrap_or(1);
            for p in &basis {
                for q in &basis {
                    let prod = multiply_basis_b(p, q, n)?;
                    lines.push(format!(
                        "{:<width$} * {:<width$} = {}",
                        p.to_string(),
                        q.to_string(),
                        prod.to_text()
                    ));
                }
            }
        }
    }
    Ok(lines.join("\n") + "\n")
}

pub fn table_json(kind: GroupKind, n: usize) -> Result<Value> {
    let mut products = Vec::new();
    match kind {
        GroupKind::D => {
            for p in enumerate_basis(n)? {
                for q in enumerate_basis(n)? {
                    let prod = multiply_basis(&p, &q)?;
                    products.push(json!({
                        "p": p.to_string(),
                        "q": q.to_string(),
                        "product": prod.to_json_value(),
                    }));
                }
            }
        }
        GroupKind::B => {
            let basis = enumerate_b_basis(n);
            for p in &basis {
                for q in &basis {
                    let prod = multiply_basis_b(p, q, n)?;
                    products.push(json!({
                        "p": p.to_string(),
                        "q": q.to_string(),
                        "product": prod.to_json_value(),
                    }));
                }
            }
        }
    }
    Ok(json!({
        "algebra": kind.letter().to_string(),
        "n": n,
        "products": products,
    }))
}
