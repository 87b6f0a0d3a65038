//! CAN frame representation, identifier bit decomposition, and
//! arbitration comparison semantics.
//!
//! Identifiers are standard-format (11 bit). Bits are indexed MSB-first:
//! index 0 is the most significant identifier bit, index 10 the least.
//! In user-facing output the bits are numbered 1 through 11.

use std::fmt;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of identifier bits in a standard CAN frame.
pub const ID_BITS: usize = 11;

/// Largest standard identifier.
pub const MAX_ID: u16 = 0x7FF;

/// Fixed per-frame overhead in bits: SOF, identifier, control fields,
/// CRC, ACK and EOF. Bit stuffing is data-dependent and not modeled, so
/// frame length is deterministic in the DLC.
pub const FRAME_OVERHEAD_BITS: u32 = 47;

/// Bit times of bus idle required between consecutive frames.
pub const INTERMISSION_BITS: u32 = 6;

/// An 11-bit standard CAN identifier.
///
/// Lower values win arbitration: a dominant (0) bit overrides a
/// recessive (1) bit, and arbitration resolves MSB-first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanId(u16);

impl CanId {
    /// Highest-priority identifier (all bits dominant).
    pub const ZERO: CanId = CanId(0);

    pub fn new(value: u16) -> Result<Self> {
        if value > MAX_ID {
            return Err(Error::IdOutOfRange(u32::from(value)));
        }
        Ok(CanId(value))
    }

    pub fn value(self) -> u16 {
        self.0
    }

    /// Decomposes the identifier into its 11 bits, MSB first.
    ///
    /// Reassembling the returned bits MSB-first yields the identifier
    /// back, so `from_bits(id.bits()) == id`.
    pub fn bits(self) -> [u8; ID_BITS] {
        let mut out = [0u8; ID_BITS];
        for (i, bit) in out.iter_mut().enumerate() {
            *bit = ((self.0 >> (ID_BITS - 1 - i)) & 1) as u8;
        }
        out
    }

    /// Value of one identifier bit; index 0 is the MSB.
    pub fn bit(self, index: usize) -> u8 {
        assert!(index < ID_BITS, "bit index {index} out of range");
        ((self.0 >> (ID_BITS - 1 - index)) & 1) as u8
    }

    /// Rebuilds an identifier from 11 bits, MSB first.
    pub fn from_bits(bits: [u8; ID_BITS]) -> Self {
        let mut value = 0u16;
        for bit in bits {
            debug_assert!(bit <= 1);
            value = (value << 1) | u16::from(bit & 1);
        }
        CanId(value)
    }

    /// Parses a hexadecimal identifier, with or without a `0x` prefix.
    pub fn parse_hex(s: &str) -> Result<Self> {
        let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
        let value = u32::from_str_radix(digits, 16)
            .map_err(|_| Error::IdOutOfRange(u32::MAX))
            .and_then(|v| {
                if v > u32::from(MAX_ID) {
                    Err(Error::IdOutOfRange(v))
                } else {
                    Ok(v)
                }
            })?;
        Ok(CanId(value as u16))
    }
}

impl fmt::Display for CanId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:03X}", self.0)
    }
}

impl TryFrom<u16> for CanId {
    type Error = Error;

    fn try_from(value: u16) -> Result<Self> {
        CanId::new(value)
    }
}

// Identifiers serialize as three uppercase hex digits, the conventional
// notation for standard CAN IDs.
impl Serialize for CanId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{self}"))
    }
}

impl<'de> Deserialize<'de> for CanId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        CanId::parse_hex(&s).map_err(|_| D::Error::custom(format!("invalid CAN identifier {s:?}")))
    }
}

/// CAN data field: up to 8 bytes, length equal to the DLC.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Payload {
    bytes: [u8; 8],
    len: u8,
}

impl Payload {
    pub const EMPTY: Payload = Payload {
        bytes: [0; 8],
        len: 0,
    };

    pub fn new(data: &[u8]) -> Result<Self> {
        if data.len() > 8 {
            return Err(Error::PayloadTooLong(data.len()));
        }
        let mut bytes = [0u8; 8];
        bytes[..data.len()].copy_from_slice(data);
        Ok(Payload {
            bytes,
            len: data.len() as u8,
        })
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bytes[..usize::from(self.len)]
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Logical name of a transmitting node. Simulation metadata only: CAN
/// frames carry no source address on the wire, and detection never
/// reads this field.
pub type SourceLabel = Arc<str>;

/// One CAN data frame as observed on (or offered to) the bus.
#[derive(Debug, Clone)]
pub struct CanFrame {
    /// Microseconds since simulation start.
    pub timestamp_us: u64,
    pub id: CanId,
    pub payload: Payload,
    /// Transmitting node, when known. `None` for frames read back from
    /// a log file, which records only on-wire fields.
    pub source: Option<SourceLabel>,
}

impl CanFrame {
    pub fn new(timestamp_us: u64, id: CanId, payload: Payload, source: Option<SourceLabel>) -> Self {
        CanFrame {
            timestamp_us,
            id,
            payload,
            source,
        }
    }

    /// Data length code: the number of payload bytes.
    pub fn dlc(&self) -> u8 {
        self.payload.len() as u8
    }
}

/// A request to transmit one frame, queued by a node at `request_time_us`
/// and subject to arbitration.
#[derive(Debug, Clone)]
pub struct TxRequest {
    pub request_time_us: u64,
    pub id: CanId,
    pub payload: Payload,
    pub source: SourceLabel,
    /// When set, the request is abandoned after losing a single
    /// arbitration round instead of re-contending. Rate-driven injectors
    /// run their controller in one-shot mode so each tick is exactly one
    /// arbitration attempt; regular ECUs retransmit until they win.
    pub one_shot: bool,
}

/// Number of bits a frame occupies on the wire (excluding intermission).
pub fn frame_bit_length(dlc: u8) -> u32 {
    FRAME_OVERHEAD_BITS + 8 * u32::from(dlc)
}

/// Resolves one arbitration round: the numerically smallest identifier
/// wins, since a dominant 0 beats a recessive 1 MSB-first.
pub fn arbitration_winner<I>(contenders: I) -> Result<CanId>
where
    I: IntoIterator<Item = CanId>,
{
    contenders.into_iter().min().ok_or(Error::NoContenders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn id_rejects_out_of_range() {
        assert!(CanId::new(0x7FF).is_ok());
        assert!(matches!(CanId::new(0x800), Err(Error::IdOutOfRange(0x800))));
    }

    #[test]
    fn bits_zero_and_all_ones() {
        assert_eq!(CanId::new(0x000).unwrap().bits(), [0; 11]);
        assert_eq!(CanId::new(0x7FF).unwrap().bits(), [1; 11]);
    }

    #[test]
    fn bits_of_2a5() {
        // 0x2A5 = 677 = 0b01010100101
        let id = CanId::new(0x2A5).unwrap();
        assert_eq!(id.bits(), [0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1]);
        assert_eq!(id.bit(0), 0);
        assert_eq!(id.bit(1), 1);
        assert_eq!(id.bit(10), 1);
    }

    #[test]
    fn winner_prefers_smaller_value() {
        let winner = arbitration_winner([CanId::new(0x100).unwrap(), CanId::new(0x200).unwrap()]);
        assert_eq!(winner.unwrap().value(), 0x100);
    }

    #[test]
    fn winner_of_singleton() {
        let id = CanId::new(0x3A0).unwrap();
        assert_eq!(arbitration_winner([id]).unwrap(), id);
    }

    #[test]
    fn most_dominant_identifier_wins() {
        let ids = [0x000, 0x001, 0x7FF].map(|v| CanId::new(v).unwrap());
        assert_eq!(arbitration_winner(ids).unwrap(), CanId::ZERO);
    }

    #[test]
    fn winner_of_empty_set_is_an_error() {
        assert!(matches!(
            arbitration_winner(std::iter::empty()),
            Err(Error::NoContenders)
        ));
    }

    #[test]
    fn frame_lengths() {
        assert_eq!(frame_bit_length(0), 47);
        assert_eq!(frame_bit_length(4), 79);
        assert_eq!(frame_bit_length(8), 111);
    }

    #[test]
    fn payload_enforces_dlc_bound() {
        assert!(Payload::new(&[0; 8]).is_ok());
        assert!(matches!(Payload::new(&[0; 9]), Err(Error::PayloadTooLong(9))));
        let p = Payload::new(&[0xBE, 0xEF]).unwrap();
        assert_eq!(p.as_slice(), &[0xBE, 0xEF]);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn id_serializes_as_three_hex_digits() {
        let id = CanId::new(0x2A5).unwrap();
        assert_eq!(serde_json::to_string(&id).unwrap(), "\"2A5\"");
        let back: CanId = serde_json::from_str("\"2A5\"").unwrap();
        assert_eq!(back, id);
        let lax: CanId = serde_json::from_str("\"0x10\"").unwrap();
        assert_eq!(lax.value(), 0x10);
        assert!(serde_json::from_str::<CanId>("\"FFF\"").is_err());
    }

    proptest! {
        #[test]
        fn bits_round_trip(value in 0u16..=MAX_ID) {
            let id = CanId::new(value).unwrap();
            prop_assert_eq!(CanId::from_bits(id.bits()), id);
        }

        #[test]
        fn winner_equals_numeric_min(values in proptest::collection::vec(0u16..=MAX_ID, 1..50)) {
            let ids: Vec<CanId> = values.iter().map(|&v| CanId::new(v).unwrap()).collect();
            let expected = CanId::new(*values.iter().min().unwrap()).unwrap();
            prop_assert_eq!(arbitration_winner(ids.iter().copied()).unwrap(), expected);

            // Invariant under duplication and reordering.
            let mut doubled = ids.clone();
            doubled.extend(ids.iter().rev().copied());
            prop_assert_eq!(arbitration_winner(doubled).unwrap(), expected);
        }
    }
}
