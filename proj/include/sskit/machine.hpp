#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sskit/bitstring.hpp"
#include "sskit/errors.hpp"
#include "sskit/rational.hpp"

namespace sskit {

// Elias gamma code of n >= 1: floor(log2 n) zeros, then n in binary.
BitString eliasGamma(const BigInt& n);
// Decodes one gamma codeword at `pos`; returns (value, bits consumed) or
// nullopt when the stream is malformed or truncated.
std::optional<std::pair<BigInt, std::size_t>> eliasGammaDecode(const BitString& bits,
                                                               std::size_t pos);

// Three-bit opcodes of the tape machine, MSB first.
enum class Opcode : std::uint8_t {
  MoveRight = 0,  // head right; fresh cells are 0
  MoveLeft = 1,   // left of cell 0 aborts
  Flip = 2,       // toggle current cell
  LoopOpen = 3,   // '[': if cell == 0, jump past matching ']'
  LoopClose = 4,  // ']': if cell != 0, jump just after matching '['
  Out = 5,        // append current cell to the output
  ReadCond = 6,   // next conditional-tape bit into the cell; over-read aborts
  ReadRand = 7,   // next random-tape bit into the cell; over-read aborts
};

enum class ProgramError {
  MalformedHeader,      // gamma header truncated or missing terminator
  LengthMismatch,       // trailing or missing bits after the declared body
  BodyNotOpcodeAligned, // body length not a multiple of three
  UnmatchedBracket,
};
std::string programErrorName(ProgramError err);

class ProgramFormatError : public FormatError {
 public:
  ProgramFormatError(ProgramError kind, const std::string& what)
      : FormatError(what), kind_(kind) {}
  ProgramError kind() const { return kind_; }

 private:
  ProgramError kind_;
};

// A self-delimiting program: gamma(body length + 1) header followed by the
// 3-bit opcode body with statically matched brackets. Prefix-freeness of the
// valid-program set is structural, from the header.
class Program {
 public:
  static Program validate(const BitString& bits);  // throws ProgramFormatError
  static std::optional<Program> tryValidate(const BitString& bits,
                                            ProgramError* why = nullptr);
  static Program fromBody(const std::vector<Opcode>& body);
  static Program parseLiteral(std::string_view lit);  // "bits:<len>:0x<hex>"

  const BitString& raw() const { return raw_; }
  std::size_t length() const { return raw_.size(); }  // header + body bits
  const std::vector<Opcode>& body() const { return body_; }
  // Partner index for brackets, -1 elsewhere.
  const std::vector<int>& match() const { return match_; }
  std::string literal() const { return raw_.literal(); }

  bool operator==(const Program& rhs) const { return raw_ == rhs.raw_; }

 private:
  Program() = default;
  BitString raw_;
  std::vector<Opcode> body_;
  std::vector<int> match_;
};

struct ExecBudget {
  long maxSteps = 4096;
  long maxCells = 256;
  long maxOutputBits = 1024;
};

enum class ExecStatus {
  Halted,
  AbortOverreadCond,
  AbortOverreadRand,
  AbortSteps,
  AbortSpace,
  AbortOutputCap,
  AbortLeftEdge,
};
std::string statusName(ExecStatus status);

struct ExecOutcome {
  ExecStatus status = ExecStatus::Halted;
  BitString output;
  long stepsUsed = 0;
  long cellsUsed = 0;
  long condBitsRead = 0;
  long randBitsRead = 0;
  bool halted() const { return status == ExecStatus::Halted; }
};

// Deterministic bounded execution; halting means the instruction pointer
// advanced past the last opcode within budget.
ExecOutcome run(const Program& p, const BitString& z, const BitString& r,
                const ExecBudget& budget);

// Visits every valid program of total length <= lmax exactly once, in
// nondecreasing total length and lexicographic raw order within a length.
// Statically invalid encodings are pruned during the prefix-tree walk.
// Return false from the callback to stop early.
void forEachProgram(int lmax, const std::function<bool(const Program&)>& fn);

// Canonical text describing the machine semantics, and its FNV-1a hash; any
// semantic change must change the hash.
std::string isaDescription();
std::uint64_t isaHash();

}  // namespace sskit
