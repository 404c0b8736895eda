//! Two-array box diagrams of the integer form of a min-semi-balanced system.
//!
//! Rows are players. Each left column is a non-exceptional set repeated
//! `α_S` times; the right array holds `α_∅` blank columns, `α_T` grey
//! columns for the exceptional set and `α_N` black columns.

use std::fmt::Write as _;

use exact_cone::semibal::integer_form;
use exact_cone::setcore::{Coalition, PlayerSet, SetSystem};
use exact_cone::Result;

/// Fill colors for the non-exceptional sets, in canonical order.
pub const PALETTE: [&str; 8] = [
    "#2e8b57", "#ff8c00", "#1e90ff", "#dc143c", "#9932cc", "#daa520", "#20b2aa", "#ff69b4",
];
pub const GREY: &str = "#aaaaaa";
pub const BLACK: &str = "#000000";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColorClass {
    Bright(usize),
    Grey,
    Black,
    Blank,
}

impl ColorClass {
    fn symbol(self) -> char {
        match self {
            ColorClass::Bright(k) => char::from(b'A' + (k % 26) as u8),
            ColorClass::Grey => '*',
            ColorClass::Black => '#',
            ColorClass::Blank => ' ',
        }
    }

    fn fill(self) -> &'static str {
        match self {
            ColorClass::Bright(k) => PALETTE[k % PALETTE.len()],
            ColorClass::Grey => GREY,
            ColorClass::Black => BLACK,
            ColorClass::Blank => "#ffffff",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Column {
    pub coalition: Coalition,
    pub color: ColorClass,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSpec {
    pub ground: PlayerSet,
    pub left: Vec<Column>,
    pub right: Vec<Column>,
}

fn to_u64(v: &num_bigint::BigUint) -> u64 {
    u64::try_from(v).expect("diagram multiplicities fit in u64")
}

impl DiagramSpec {
    pub fn from_system(sys: &SetSystem) -> Result<Self> {
        let f = integer_form(sys)?;
        let g = sys.ground();
        let left = f
            .alpha
            .iter()
            .enumerate()
            .map(|(k, (c, a))| Column {
                coalition: *c,
                color: ColorClass::Bright(k),
                count: to_u64(a),
            })
            .collect();
        let mut right = Vec::new();
        let mut push = |coalition, color, count: u64| {
            if count > 0 {
                right.push(Column {
                    coalition,
                    color,
                    count,
                });
            }
        };
        push(Coalition::EMPTY, ColorClass::Blank, to_u64(&f.alpha_empty));
        if let Some((t, a)) = &f.alpha_exceptional {
            push(*t, ColorClass::Grey, to_u64(a));
        }
        push(g.full(), ColorClass::Black, to_u64(&f.alpha_n));
        Ok(DiagramSpec {
            ground: g.clone(),
            left,
            right,
        })
    }

    /// Swaps boxes and non-boxes: every coalition is complemented and the
    /// blank and black columns trade places; color classes are kept.
    pub fn reflect(&self) -> DiagramSpec {
        let full = self.ground.full();
        let flip = |c: &Column| Column {
            coalition: c.coalition.complement_in(full),
            color: match c.color {
                ColorClass::Blank => ColorClass::Black,
                ColorClass::Black => ColorClass::Blank,
                other => other,
            },
            count: c.count,
        };
        let mut right: Vec<Column> = self.right.iter().map(flip).collect();
        right.sort_by_key(|c| match c.color {
            ColorClass::Blank => 0,
            ColorClass::Grey => 1,
            _ => 2,
        });
        DiagramSpec {
            ground: self.ground.clone(),
            left: self.left.iter().map(flip).collect(),
            right,
        }
    }

    fn boxes(columns: &[Column], player: usize) -> u64 {
        columns
            .iter()
            .filter(|c| c.coalition.contains(player))
            .map(|c| c.count)
            .sum()
    }

    /// Box counts per player row in the left and right arrays.
    pub fn row_counts(&self) -> (Vec<u64>, Vec<u64>) {
        let n = self.ground.n();
        (
            (0..n).map(|i| Self::boxes(&self.left, i)).collect(),
            (0..n).map(|i| Self::boxes(&self.right, i)).collect(),
        )
    }

    fn cells(columns: &[Column]) -> Vec<(Coalition, ColorClass)> {
        columns
            .iter()
            .flat_map(|c| std::iter::repeat_n((c.coalition, c.color), c.count as usize))
            .collect()
    }

    /// One character per cell: the set's letter for a box, `.` otherwise.
    pub fn render_ascii(&self) -> String {
        let labels = self.ground.labels();
        let width = labels.iter().map(String::len).max().unwrap_or(1);
        let left = Self::cells(&self.left);
        let right = Self::cells(&self.right);
        let row = |cells: &[(Coalition, ColorClass)], i: usize| -> String {
            cells
                .iter()
                .map(|(c, col)| if c.contains(i) { col.symbol() } else { '.' })
                .collect()
        };
        let mut out = String::new();
        for (i, label) in labels.iter().enumerate() {
            let _ = writeln!(
                out,
                "{label:>width$} {} | {}",
                row(&left, i),
                row(&right, i)
            );
        }
        let mut legend: Vec<String> = self
            .left
            .iter()
            .chain(&self.right)
            .filter(|c| c.color != ColorClass::Blank)
            .map(|c| {
                format!(
                    "{}={}x{}",
                    c.color.symbol(),
                    self.ground.format_coalition(c.coalition),
                    c.count
                )
            })
            .collect();
        if let Some(b) = self.right.iter().find(|c| c.color == ColorClass::Blank) {
            legend.push(format!("blank x{}", b.count));
        }
        let _ = writeln!(out, "{}", legend.join(" "));
        out
    }

    pub fn render_svg(&self) -> String {
        const CELL: usize = 20;
        const GAP: usize = 30;
        const MARGIN: usize = 30;
        let n = self.ground.n();
        let left = Self::cells(&self.left);
        let right = Self::cells(&self.right);
        let right_x = MARGIN + left.len() * CELL + GAP;
        let w = right_x + right.len() * CELL + 10;
        let h = 10 + n * CELL + 10;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        for (i, label) in self.ground.labels().iter().enumerate() {
            let y = 10 + i * CELL + CELL * 3 / 4;
            let _ = writeln!(
                s,
                r#"<text x="5" y="{y}" font-family="monospace" font-size="14">{label}</text>"#
            );
        }
        let mut draw = |x0: usize, cells: &[(Coalition, ColorClass)]| {
            for (j, (c, col)) in cells.iter().enumerate() {
                for i in 0..n {
                    let fill = if c.contains(i) { col.fill() } else { "#ffffff" };
                    let _ = writeln!(
                        s,
                        r##"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#cccccc"/>"##,
                        x0 + j * CELL,
                        10 + i * CELL
                    );
                }
            }
        };
        draw(MARGIN, &left);
        draw(right_x, &right);
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, text: &str) -> SetSystem {
        PlayerSet::new(n).unwrap().parse_system(text).unwrap()
    }

    fn summary(cols: &[Column], g: &PlayerSet) -> Vec<(String, ColorClass, u64)> {
        cols.iter()
            .map(|c| (g.format_coalition(c.coalition), c.color, c.count))
            .collect()
    }

    #[test]
    fn pictogram_example() {
        let s = sys(5, "{ab,ac,bc,abd,abe}");
        let d = DiagramSpec::from_system(&s).unwrap();
        let g = s.ground();
        assert_eq!(
            summary(&d.left, g),
            vec![
                ("ac".into(), ColorClass::Bright(0), 1),
                ("bc".into(), ColorClass::Bright(1), 1),
                ("abd".into(), ColorClass::Bright(2), 2),
                ("abe".into(), ColorClass::Bright(3), 2),
            ]
        );
        assert_eq!(
            summary(&d.right, g),
            vec![
                ("0".into(), ColorClass::Blank, 1),
                ("ab".into(), ColorClass::Grey, 3),
                ("N".into(), ColorClass::Black, 2),
            ]
        );
        let (l, r) = d.row_counts();
        assert_eq!(l, r);
    }

    #[test]
    fn balanced_example_has_no_grey() {
        let s = sys(4, "{ab,ac,bc,d}");
        let d = DiagramSpec::from_system(&s).unwrap();
        assert_eq!(
            summary(&d.right, s.ground()),
            vec![
                ("0".into(), ColorClass::Blank, 3),
                ("N".into(), ColorClass::Black, 2)
            ]
        );
        let (l, r) = d.row_counts();
        assert_eq!(l, r);
    }

    #[test]
    fn ascii_rows() {
        let d = DiagramSpec::from_system(&sys(3, "{a,b,ab}")).unwrap();
        assert_eq!(
            d.render_ascii(),
            "a A. | .*\nb .B | .*\nc .. | ..\nA=ax1 B=bx1 *=abx1 blank x1\n"
        );
        let svg = d.render_svg();
        assert!(svg.starts_with("<svg") && svg.contains(GREY) && !svg.contains(BLACK));
    }

    #[test]
    fn not_minimal_is_rejected() {
        assert!(DiagramSpec::from_system(&sys(4, "{a,b,ab,abc,abd}")).is_err());
    }
}
