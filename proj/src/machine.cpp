#include "sskit/machine.hpp"

#include <algorithm>

namespace sskit {

BitString eliasGamma(const BigInt& n) {
  if (n < 1) throw Error("gamma code is defined for n >= 1");
  std::string binary;
  for (BigInt v = n; v > 0; v >>= 1) {
    binary.push_back(static_cast<char>('0' + (v & 1).convert_to<int>()));
  }
  std::reverse(binary.begin(), binary.end());
  std::string out(binary.size() - 1, '0');
  out += binary;
  return BitString(std::move(out));
}

std::optional<std::pair<BigInt, std::size_t>> eliasGammaDecode(const BitString& bits,
                                                               std::size_t pos) {
  std::size_t zeros = 0;
  while (pos + zeros < bits.size() && bits.bit(pos + zeros) == 0) ++zeros;
  if (pos + zeros >= bits.size()) return std::nullopt;  // no leading '1'
  std::size_t total = 2 * zeros + 1;
  if (pos + total > bits.size()) return std::nullopt;  // value bits truncated
  BigInt value = 1;
  for (std::size_t i = 0; i < zeros; ++i) {
    value = (value << 1) | bits.bit(pos + zeros + 1 + i);
  }
  return std::make_pair(value, total);
}

std::string programErrorName(ProgramError err) {
  switch (err) {
    case ProgramError::MalformedHeader: return "malformed header";
    case ProgramError::LengthMismatch: return "trailing or missing bits";
    case ProgramError::BodyNotOpcodeAligned: return "body length not a multiple of three";
    case ProgramError::UnmatchedBracket: return "unmatched bracket";
  }
  return "unknown";
}

namespace {

std::optional<std::vector<int>> matchBrackets(const std::vector<Opcode>& body) {
  std::vector<int> match(body.size(), -1);
  std::vector<int> stack;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == Opcode::LoopOpen) {
      stack.push_back(static_cast<int>(i));
    } else if (body[i] == Opcode::LoopClose) {
      if (stack.empty()) return std::nullopt;
      match[static_cast<std::size_t>(stack.back())] = static_cast<int>(i);
      match[i] = stack.back();
      stack.pop_back();
    }
  }
  if (!stack.empty()) return std::nullopt;
  return match;
}

}  // namespace

std::optional<Program> Program::tryValidate(const BitString& bits, ProgramError* why) {
  auto fail = [&](ProgramError e) -> std::optional<Program> {
    if (why != nullptr) *why = e;
    return std::nullopt;
  };
  auto header = eliasGammaDecode(bits, 0);
  if (!header.has_value()) return fail(ProgramError::MalformedHeader);
  const auto& [lenPlusOne, headerBits] = *header;
  BigInt bodyLen = lenPlusOne - 1;
  if (bodyLen != BigInt(bits.size() - headerBits)) {
    return fail(ProgramError::LengthMismatch);
  }
  std::size_t len = static_cast<std::size_t>(bits.size() - headerBits);
  if (len % 3 != 0) return fail(ProgramError::BodyNotOpcodeAligned);

  Program p;
  p.raw_ = bits;
  p.body_.reserve(len / 3);
  for (std::size_t i = 0; i < len / 3; ++i) {
    int v = (bits.bit(headerBits + 3 * i) << 2) | (bits.bit(headerBits + 3 * i + 1) << 1) |
            bits.bit(headerBits + 3 * i + 2);
    p.body_.push_back(static_cast<Opcode>(v));
  }
  auto match = matchBrackets(p.body_);
  if (!match.has_value()) return fail(ProgramError::UnmatchedBracket);
  p.match_ = std::move(*match);
  return p;
}

Program Program::validate(const BitString& bits) {
  ProgramError why = ProgramError::MalformedHeader;
  auto p = tryValidate(bits, &why);
  if (!p.has_value()) {
    throw ProgramFormatError(why, "invalid program (" + programErrorName(why) + "): " + bits.literal());
  }
  return *p;
}

Program Program::fromBody(const std::vector<Opcode>& body) {
  BitString raw = eliasGamma(BigInt(body.size() * 3 + 1));
  for (Opcode op : body) {
    int v = static_cast<int>(op);
    raw.append((v >> 2) & 1);
    raw.append((v >> 1) & 1);
    raw.append(v & 1);
  }
  auto match = matchBrackets(body);
  if (!match.has_value()) {
    throw ProgramFormatError(ProgramError::UnmatchedBracket, "unmatched bracket in body");
  }
  Program p;
  p.raw_ = std::move(raw);
  p.body_ = body;
  p.match_ = std::move(*match);
  return p;
}

Program Program::parseLiteral(std::string_view lit) {
  return validate(BitString::parseLiteral(lit));
}

std::string statusName(ExecStatus status) {
  switch (status) {
    case ExecStatus::Halted: return "HALTED";
    case ExecStatus::AbortOverreadCond: return "ABORT_OVERREAD_Z";
    case ExecStatus::AbortOverreadRand: return "ABORT_OVERREAD_R";
    case ExecStatus::AbortSteps: return "ABORT_STEPS";
    case ExecStatus::AbortSpace: return "ABORT_SPACE";
    case ExecStatus::AbortOutputCap: return "ABORT_OUTPUT_CAP";
    case ExecStatus::AbortLeftEdge: return "ABORT_LEFT_EDGE";
  }
  return "unknown";
}

ExecOutcome run(const Program& p, const BitString& z, const BitString& r,
                const ExecBudget& budget) {
  ExecOutcome out;
  std::vector<std::uint8_t> tape(1, 0);  // cell 0 counts as visited
  std::size_t head = 0;
  std::size_t ip = 0;
  std::size_t zPos = 0;
  std::size_t rPos = 0;

  auto finish = [&](ExecStatus status) {
    out.status = status;
    out.cellsUsed = static_cast<long>(tape.size());
    out.condBitsRead = static_cast<long>(zPos);
    out.randBitsRead = static_cast<long>(rPos);
    return out;
  };

  while (ip < p.body().size()) {
    if (out.stepsUsed == budget.maxSteps) return finish(ExecStatus::AbortSteps);
    ++out.stepsUsed;
    bool jumped = false;
    switch (p.body()[ip]) {
      case Opcode::MoveRight:
        ++head;
        if (head == tape.size()) {
          if (static_cast<long>(tape.size()) == budget.maxCells) {
            return finish(ExecStatus::AbortSpace);
          }
          tape.push_back(0);
        }
        break;
      case Opcode::MoveLeft:
        if (head == 0) return finish(ExecStatus::AbortLeftEdge);
        --head;
        break;
      case Opcode::Flip:
        tape[head] ^= 1;
        break;
      case Opcode::LoopOpen:
        if (tape[head] == 0) {
          ip = static_cast<std::size_t>(p.match()[ip]) + 1;
          jumped = true;
        }
        break;
      case Opcode::LoopClose:
        if (tape[head] != 0) {
          ip = static_cast<std::size_t>(p.match()[ip]) + 1;
          jumped = true;
        }
        break;
      case Opcode::Out:
        if (static_cast<long>(out.output.size()) == budget.maxOutputBits) {
          return finish(ExecStatus::AbortOutputCap);
        }
        out.output.append(tape[head]);
        break;
      case Opcode::ReadCond:
        if (zPos == z.size()) return finish(ExecStatus::AbortOverreadCond);
        tape[head] = static_cast<std::uint8_t>(z.bit(zPos++));
        break;
      case Opcode::ReadRand:
        if (rPos == r.size()) return finish(ExecStatus::AbortOverreadRand);
        tape[head] = static_cast<std::uint8_t>(r.bit(rPos++));
        break;
    }
    if (!jumped) ++ip;
  }
  return finish(ExecStatus::Halted);
}

namespace {

// DFS over opcode bodies in lexicographic order, pruning unmatched ']' and
// bodies whose open brackets cannot all close in the remaining slots.
bool emitBodies(std::vector<Opcode>& body, int depth, std::size_t targetOps,
                const std::function<bool(const Program&)>& fn) {
  if (body.size() == targetOps) {
    if (depth != 0) return true;
    return fn(Program::fromBody(body));
  }
  std::size_t remaining = targetOps - body.size();
  for (int v = 0; v < 8; ++v) {
    Opcode op = static_cast<Opcode>(v);
    int nextDepth = depth;
    if (op == Opcode::LoopOpen) {
      ++nextDepth;
    } else if (op == Opcode::LoopClose) {
      if (depth == 0) continue;
      --nextDepth;
    }
    if (static_cast<std::size_t>(nextDepth) > remaining - 1) continue;
    body.push_back(op);
    bool keepGoing = emitBodies(body, nextDepth, targetOps, fn);
    body.pop_back();
    if (!keepGoing) return false;
  }
  return true;
}

}  // namespace

void forEachProgram(int lmax, const std::function<bool(const Program&)>& fn) {
  for (std::size_t ops = 0;; ++ops) {
    std::size_t bodyBits = ops * 3;
    std::size_t headerBits = eliasGamma(BigInt(bodyBits + 1)).size();
    if (static_cast<long>(bodyBits + headerBits) > lmax) {
      // Total length is nondecreasing in the opcode count, so no longer body fits.
      break;
    }
    std::vector<Opcode> body;
    body.reserve(ops);
    if (!emitBodies(body, 0, ops, fn)) return;
  }
}

std::string isaDescription() {
  return "prefix-machine v1; program = gamma(bodyBits+1) || body; body = 3-bit opcodes MSB-first; "
         "000 MOVR fresh=0; 001 MOVL abort-left-edge; 010 FLIP; 011 LOOP if cell==0 jump past match; "
         "100 END if cell!=0 jump after match; 101 OUT; 110 RDZ abort-on-overread; "
         "111 RDR abort-on-overread; halt = ip past last opcode; one step per executed opcode "
         "including jumps; cells = distinct visited; abort-steps checked before each opcode; "
         "output cap checked before emit";
}

std::uint64_t isaHash() {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : isaDescription()) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace sskit
