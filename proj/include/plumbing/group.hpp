#pragma once

#include "plumbing/graph.hpp"
#include "plumbing/smith.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace plumbing {

enum class GeneratorKind { Vertex, Arrow, ExtraEdge, GenusAlpha, GenusBeta };

/// A presentation generator. `index` is the 0-based position of the vertex,
/// arrowhead or extra edge in the ordered graph; genus generators also carry
/// their pair number j (1-based) and the vertex position in `index`.
struct Generator {
  GeneratorKind kind = GeneratorKind::Vertex;
  std::size_t index = 0;
  std::size_t pair = 0;
  std::string name;

  bool operator==(const Generator&) const = default;
};

struct Letter {
  std::size_t gen = 0;
  std::int64_t exp = 0;
  bool operator==(const Letter&) const = default;
};

/// Word in the free group, kept as a list of syllables x^k.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) { reduce(); }
  static Word letter(std::size_t gen, std::int64_t exp = 1) { return Word({{gen, exp}}); }
  static Word commutator(const Word& a, const Word& b);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t length() const;  // total |exponent| sum

  Word operator*(const Word& o) const;
  Word& operator*=(const Word& o);
  Word inverse() const;
  Word pow(std::int64_t k) const;

  /// Number of syllables on `gen`.
  std::size_t occurrences(std::size_t gen) const;
  /// Conjugate with matching ends cancelled.
  Word cyclically_reduced() const;
  /// Replaces every x_gen^k by replacement^k.
  Word substitute(std::size_t gen, const Word& replacement) const;
  /// Renumbers generators through `map`; entries of `map` for dropped generators are ignored.
  Word renumbered(const std::vector<std::size_t>& map) const;

  /// Signed exponent sum of each generator.
  std::vector<std::int64_t> exponent_sums(std::size_t generator_count) const;

  bool operator==(const Word& o) const = default;

private:
  void reduce();
  std::vector<Letter> letters_;
};

/// True when `a` is a cyclic rotation of `b` (both cyclically reduced first).
bool cyclically_equal(const Word& a, const Word& b);

enum class RelatorKind { R1, R2, R3, R4, Derived };

struct Relator {
  Word word;
  RelatorKind kind = RelatorKind::Derived;
};

struct Presentation {
  std::vector<Generator> generators;
  std::vector<Relator> relators;

  std::size_t generator_count() const { return generators.size(); }
  std::optional<std::size_t> find(const std::string& name) const;
};

/// Plumbing presentation: generators gamma_v, gamma_h, gamma_e (e off the tree)
/// and alpha/beta pairs; relators of types R1-R4. With arrows present the
/// commutator relator of the last arrowhead is redundant and is dropped unless
/// `keep_all_arrow_relators` is set.
Presentation presentation(const OrderedGraph& og, bool keep_all_arrow_relators = false);

/// Eliminates generators that occur exactly once, with exponent +-1, in some
/// relator; lowest generator index first, ties by relator index. Repeats to a
/// fixpoint. Trivial relators are dropped.
///
/// When `expressions` is given it receives, for every input generator, its
/// value as a word in the surviving generators.
Presentation tietze_eliminate(const Presentation& p, std::vector<Word>* expressions = nullptr);

/// Exponent-sum matrix (relators x generators).
IntMatrix relation_matrix(const Presentation& p);

/// H_1 of a presentation via Smith normal form of its relation matrix.
///
/// Group elements are written in Smith coordinates y = x Q (x the exponent
/// vector over generators). Normal form keeps torsion coordinates reduced
/// mod d_i, then the free coordinates.
class AbelianizedGroup {
public:
  explicit AbelianizedGroup(const Presentation& p);

  std::size_t generator_count() const { return generator_count_; }
  std::size_t rank() const { return free_.size(); }
  const std::vector<Integer>& torsion() const { return torsion_; }
  const std::vector<std::int64_t>& torsion_orders() const { return torsion_orders_; }
  /// Length of a normal-form vector: torsion coordinates then free ones.
  std::size_t coordinate_count() const { return torsion_.size() + free_.size(); }

  const SmithForm& smith() const { return snf_; }
  const IntMatrix& basis_inverse() const { return q_inverse_; }

  std::vector<std::int64_t> reduce(const std::vector<std::int64_t>& generator_exponents) const;
  std::vector<std::int64_t> reduce_in_place(std::vector<std::int64_t> coords) const;
  std::vector<std::int64_t> image(std::size_t generator) const;
  std::vector<std::int64_t> image(const Word& w) const;

  /// Generator exponent vector representing Smith coordinate `coord` (row of Q^-1).
  std::vector<std::int64_t> coordinate_preimage(std::size_t coord) const;

private:
  std::size_t generator_count_ = 0;
  SmithForm snf_;
  IntMatrix q_inverse_;
  std::vector<Integer> torsion_;
  std::vector<std::int64_t> torsion_orders_;
  std::vector<std::size_t> torsion_cols_;  // y-index of each torsion coordinate
  std::vector<std::size_t> free_;          // y-index of each free coordinate
};

AbelianizedGroup abelianize(const Presentation& p);

std::string format_word(const Word& w, const Presentation& p);
/// One relator per line after a generator legend; stable ordering.
std::string format_presentation(const Presentation& p, const OrderedGraph* og = nullptr);

}  // namespace plumbing
