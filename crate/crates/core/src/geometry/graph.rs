//! Opposition graphs as bit matrices, with text and binary export.

use std::io::{Read, Write};

use super::flags::FlagSpace;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Magic bytes of the binary export.
pub const MAGIC: &[u8; 4] = b"OPPG";
pub const FORMAT_VERSION: u32 = 1;

/// Symmetric 0/1 matrix stored as rows of 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Debug, Clone)]
pub struct OppositionGraph {
    /// Canonical encodings of the vertices (flags), in vertex order.
    pub labels: Vec<String>,
    pub adjacency: BitMatrix,
    pub valency: usize,
}

impl OppositionGraph {
    /// Builds the graph; errors unless it is loop-free, symmetric and regular.
    pub fn build(space: &FlagSpace, budget: &Budget) -> Result<Self> {
        let v = space.len();
        Budget::check("opposition graph vertices", v as u64, budget.graph_vertices)?;
        let tables = space.opposition_tables()?;
        let mut adjacency = BitMatrix::new(v);
        for a in 0..v {
            for b in 0..v {
                if tables.opposite(a, b) {
                    adjacency.set(a, b);
                }
            }
        }
        let labels = space.flags().iter().map(|f| f.encode()).collect();
        Self::from_parts(labels, adjacency)
    }

    pub fn from_parts(labels: Vec<String>, adjacency: BitMatrix) -> Result<Self> {
        let v = adjacency.len();
        if labels.len() != v {
            return Err(Error::Inconsistent(
                "label count differs from vertex count".into(),
            ));
        }
        for a in 0..v {
            if adjacency.get(a, a) {
                return Err(Error::Inconsistent(format!(
                    "vertex {a} is opposite itself"
                )));
            }
            for b in a + 1..v {
                if adjacency.get(a, b) != adjacency.get(b, a) {
                    return Err(Error::Inconsistent(format!(
                        "opposition of {a}, {b} is not symmetric"
                    )));
                }
            }
        }
        let valency = if v == 0 { 0 } else { adjacency.degree(0) };
        if let Some(bad) = (0..v).find(|&a| adjacency.degree(a) != valency) {
            return Err(Error::Inconsistent(format!(
                "vertex {bad} has degree {} instead of {valency}",
                adjacency.degree(bad)
            )));
        }
        Ok(OppositionGraph {
            labels,
            adjacency,
            valency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// One line per vertex: index, encoding, comma separated neighbours.
    pub fn write_adjacency_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (i, label) in self.labels.iter().enumerate() {
            let nbrs: Vec<String> = self.adjacency.neighbors(i).map(|j| j.to_string()).collect();
            writeln!(out, "{i}\t{label}\t{}", nbrs.join(","))?;
        }
        Ok(())
    }

    /// 16-byte header (magic, version, vertex count, valency; u32 little
    /// endian) followed by the rows, each padded to whole bytes, bit j of a
    /// row at bit j % 8 of byte j / 8.
    pub fn write_binary<W: Write>(&self, mut out: W) -> Result<()> {
        let v = self.vertex_count();
        out.write_all(MAGIC)?;
        out.write_all(&FORMAT_VERSION.to_le_bytes())?;
        out.write_all(&(v as u32).to_le_bytes())?;
        out.write_all(&(self.valency as u32).to_le_bytes())?;
        let row_bytes = v.div_ceil(8);
        for i in 0..v {
            let bytes: Vec<u8> = self
                .adjacency
                .row(i)
                .iter()
                .flat_map(|w| w.to_le_bytes())
                .take(row_bytes)
                .collect();
            out.write_all(&bytes)?;
        }
        Ok(())
    }

    /// Reads the binary export back; vertex labels become their indices.
    pub fn read_binary<R: Read>(mut input: R) -> Result<Self> {
        let mut header = [0u8; 16];
        input.read_exact(&mut header)?;
        if &header[..4] != MAGIC {
            return Err(Error::Parse("missing OPPG magic".into()));
        }
        let word = |i: usize| u32::from_le_bytes(header[i..i + 4].try_into().expect("4 bytes"));
        if word(4) != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported OPPG version {}",
                word(4)
            )));
        }
        let v = word(8) as usize;
        let row_bytes = v.div_ceil(8);
        let mut adjacency = BitMatrix::new(v);
        let mut row = vec![0u8; row_bytes];
        for i in 0..v {
            input.read_exact(&mut row)?;
            for j in 0..v {
                if row[j / 8] >> (j % 8) & 1 == 1 {
                    adjacency.set(i, j);
                }
            }
        }
        let graph = Self::from_parts((0..v).map(|i| i.to_string()).collect(), adjacency)?;
        if graph.valency != word(12) as usize {
            return Err(Error::Parse(
                "valency in header does not match the rows".into(),
            ));
        }
        Ok(graph)
    }
}
