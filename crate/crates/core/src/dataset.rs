//! Input parsing: delimited attribute tables and market-basket line files,
//! both loaded into an immutable [`TransactionDb`].

use std::collections::HashMap;
use std::io::Read;

use crate::bits::BitVec;
use crate::error::{Error, Result};

pub type ItemId = u32;

/// One distinct (attribute, value) pair observed in the input.
///
/// Ids are dense and assigned attribute-major: every item of the first
/// attribute precedes every item of the second, and within an attribute
/// values keep first-seen order. Rule text renders items in id order, so
/// this ordering is what makes output deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Item {
    pub attribute: String,
    pub value: String,
    pub id: ItemId,
}

impl Item {
    /// `attribute=value` for tabular items, the raw token for basket items.
    pub fn display(&self) -> String {
        if self.value.is_empty() {
            self.attribute.clone()
        } else {
            format!("{}={}", self.attribute, self.value)
        }
    }
}

/// An immutable transaction database: an item dictionary plus one
/// transaction bit-vector per item (bit t set iff transaction t contains
/// the item).
#[derive(Clone, Debug)]
pub struct TransactionDb {
    items: Vec<Item>,
    bits: Vec<BitVec>,
    n_transactions: usize,
    name: String,
}

impl TransactionDb {
    fn build(
        name: &str,
        items: Vec<(String, String)>,
        occurrences: Vec<Vec<usize>>,
        n_transactions: usize,
    ) -> Self {
        let items = items
            .into_iter()
            .enumerate()
            .map(|(id, (attribute, value))| Item {
                attribute,
                value,
                id: id as ItemId,
            })
            .collect::<Vec<_>>();
        let bits = occurrences
            .into_iter()
            .map(|rows| {
                let mut v = BitVec::zeros(n_transactions);
                for t in rows {
                    v.set(t);
                }
                v
            })
            .collect();
        TransactionDb {
            items,
            bits,
            n_transactions,
            name: name.to_string(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_transactions(&self) -> usize {
        self.n_transactions
    }

    pub fn n_items(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn item(&self, id: ItemId) -> Result<&Item> {
        self.items.get(id as usize).ok_or(Error::UnknownItem(id))
    }

    pub fn bits(&self, id: ItemId) -> Result<&BitVec> {
        self.bits.get(id as usize).ok_or(Error::UnknownItem(id))
    }

    /// Transactions containing item `id` (the bit-vector popcount).
    pub fn item_count(&self, id: ItemId) -> Result<usize> {
        Ok(self.bits(id)?.count_ones())
    }

    /// Whether transaction `t` contains item `id`.
    pub fn contains(&self, id: ItemId, t: usize) -> Result<bool> {
        Ok(self.bits(id)?.get(t))
    }

    pub fn find(&self, attribute: &str, value: &str) -> Option<ItemId> {
        self.items
            .iter()
            .find(|i| i.attribute == attribute && i.value == value)
            .map(|i| i.id)
    }
}

/// Options for [`load_tabular`].
#[derive(Clone, Debug, Default)]
pub struct TabularOptions {
    /// Field delimiter; `None` auto-detects comma vs. tab from the first line.
    pub delimiter: Option<u8>,
    /// Attribute names to drop (identifier columns such as record names).
    /// Names not present in the header are ignored.
    pub exclude: Vec<String>,
    /// Externally supplied attribute names; when set, the first input line
    /// is data rather than a header.
    pub header: Option<Vec<String>>,
}

/// Parse a delimited table (embedded or supplied header, one value per
/// attribute per row) into a database with one item per distinct
/// (attribute, value) pair. Empty cells become the value `"?"`.
pub fn load_tabular(
    mut source: impl Read,
    name: &str,
    options: &TabularOptions,
) -> Result<TransactionDb> {
    let mut raw = Vec::new();
    source.read_to_end(&mut raw)?;
    let delimiter = options.delimiter.unwrap_or_else(|| detect_delimiter(&raw));

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .delimiter(delimiter)
        .from_reader(raw.as_slice());
    let mut records = reader.records();

    let (header, first_data_line) = match &options.header {
        Some(names) => (names.clone(), 1),
        None => {
            let record = records.next().transpose().map_err(|e| Error::Parse {
                row: 1,
                message: e.to_string(),
            })?;
            match record {
                Some(r) => (r.iter().map(str::to_string).collect(), 2),
                None => return Err(Error::NoTransactions),
            }
        }
    };

    let mut seen = HashMap::new();
    for attr in &header {
        if seen.insert(attr.clone(), ()).is_some() {
            return Err(Error::DuplicateAttribute(attr.clone()));
        }
    }
    let included: Vec<usize> = (0..header.len())
        .filter(|&c| !options.exclude.iter().any(|e| e == &header[c]))
        .collect();

    // First pass: collect rows and assign per-attribute value order.
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (i, record) in records.enumerate() {
        let line = first_data_line + i;
        let record = record.map_err(|e| Error::Parse {
            row: line,
            message: e.to_string(),
        })?;
        if record.len() != header.len() {
            return Err(Error::Parse {
                row: line,
                message: format!(
                    "expected {} fields, found {}",
                    header.len(),
                    record.len()
                ),
            });
        }
        rows.push(
            included
                .iter()
                .map(|&c| {
                    let v = record.get(c).unwrap_or("");
                    if v.is_empty() { "?" } else { v }.to_string()
                })
                .collect(),
        );
    }
    if rows.is_empty() {
        return Err(Error::NoTransactions);
    }

    // Attribute-major id assignment, values in first-seen order.
    let mut items = Vec::new();
    let mut ids: Vec<HashMap<String, usize>> = vec![HashMap::new(); included.len()];
    for (slot, &c) in included.iter().enumerate() {
        for row in &rows {
            let v = &row[slot];
            if !ids[slot].contains_key(v) {
                ids[slot].insert(v.clone(), items.len());
                items.push((header[c].clone(), v.clone()));
            }
        }
    }
    let mut occurrences = vec![Vec::new(); items.len()];
    for (t, row) in rows.iter().enumerate() {
        for (slot, v) in row.iter().enumerate() {
            occurrences[ids[slot][v]].push(t);
        }
    }
    Ok(TransactionDb::build(name, items, occurrences, rows.len()))
}

/// Parse market-basket lines: one transaction per line, items separated by
/// runs of spaces/tabs, duplicates within a line counted once. Blank lines
/// are empty transactions; a file with no lines at all is an error.
pub fn load_basket(mut source: impl Read, name: &str) -> Result<TransactionDb> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    let lines: Vec<&str> = text.lines().collect();
    if lines.is_empty() {
        return Err(Error::NoTransactions);
    }

    let mut items: Vec<(String, String)> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut occurrences: Vec<Vec<usize>> = Vec::new();
    for (t, line) in lines.iter().enumerate() {
        for token in line.split_whitespace() {
            let id = *ids.entry(token.to_string()).or_insert_with(|| {
                items.push((token.to_string(), String::new()));
                occurrences.push(Vec::new());
                items.len() - 1
            });
            if occurrences[id].last() != Some(&t) {
                occurrences[id].push(t);
            }
        }
    }
    Ok(TransactionDb::build(name, items, occurrences, lines.len()))
}

fn detect_delimiter(raw: &[u8]) -> u8 {
    let first_line = raw.split(|&b| b == b'\n').next().unwrap_or(&[]);
    if first_line.contains(&b'\t') {
        b'\t'
    } else {
        b','
    }
}
