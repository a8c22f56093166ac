#pragma once

#include "ramalg/rat.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ramalg {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct ConjClass {
    long rep;                    // minimal element index in the class
    std::vector<long> elements;  // sorted
};

// Finite group as a full multiplication table over element indices 0..order-1,
// index 0 the identity. Immutable after construction.
class FiniteGroup {
public:
    static long order_ceiling();
    static void set_order_ceiling(long c);

    // constructors for the supported group specifications
    static GroupPtr from_table(const std::vector<std::vector<long>>& table,
                               std::string label = "table");
    static GroupPtr from_permutations(long degree, const std::vector<std::vector<long>>& gens,
                                      std::string label = "perm");
    static GroupPtr cyclic(long n);
    static GroupPtr dihedral(long n);                 // order 2n
    static GroupPtr generalized_quaternion(long n);   // n = 2^k >= 8
    static GroupPtr direct_product(const std::vector<GroupPtr>& factors);
    // action: images of normal->generators() under the twisting automorphism
    static GroupPtr semidirect(const GroupPtr& normal, long m, const std::vector<long>& action);
    static GroupPtr wreath_by_c2(const GroupPtr& base);

    long order() const { return order_; }
    long mul(long a, long b) const { return table_[a * order_ + b]; }
    long inv(long a) const { return inv_[a]; }
    long conj_by(long g, long x) const { return mul(mul(g, x), inv(g)); }
    long pow(long a, long k) const;
    long element_order(long a) const { return orders_[a]; }
    long exponent() const { return exponent_; }

    const std::vector<ConjClass>& classes() const { return classes_; }
    long class_of(long x) const { return class_of_[x]; }
    long class_count() const { return static_cast<long>(classes_.size()); }

    bool is_abelian() const;
    // generator of G when cyclic
    std::optional<long> cyclic_generator() const;

    const std::vector<long>& generators() const { return gens_; }
    const std::string& label() const { return label_; }

    std::vector<long> subgroup_closure(std::vector<long> seed) const;
    std::vector<long> derived_subgroup() const;
    std::vector<long> center() const;
    bool is_normal_set(const std::vector<long>& elems) const;  // elems sorted
    bool is_subgroup_set(const std::vector<long>& elems) const;

    // the subgroup on the given (sorted) elements as a group of its own;
    // to_parent maps new indices to old ones
    static std::pair<GroupPtr, std::vector<long>> subgroup_as_group(const GroupPtr& g,
                                                                    const std::vector<long>& elems,
                                                                    std::string label = "subgroup");
    // quotient by a normal subgroup; proj maps parent indices to quotient indices
    static std::pair<GroupPtr, std::vector<long>> quotient(const GroupPtr& g,
                                                           const std::vector<long>& normal_elems);

private:
    long order_ = 1;
    std::vector<long> table_, inv_, orders_, class_of_;
    std::vector<ConjClass> classes_;
    std::vector<long> gens_;
    long exponent_ = 1;
    std::string label_;

    static GroupPtr finalize(std::vector<long> table, long order, std::vector<long> gens,
                             std::string label, bool check_associativity);
};

struct NormalSubgroup {
    GroupPtr parent;
    std::vector<long> elements;  // sorted, contains 0

    long order() const { return static_cast<long>(elements.size()); }
    bool is_trivial() const { return elements.size() == 1; }
    bool contains(long x) const;
};

NormalSubgroup make_normal_subgroup(const GroupPtr& g, std::vector<long> elements);

// intersection; empty sequence yields the whole group
NormalSubgroup joint_kernel(const GroupPtr& g, const std::vector<NormalSubgroup>& kernels);

// Decomposition G = Gamma_p x| Z/nZ with Gamma_p the (normal) Sylow p-subgroup and a
// cyclic complement; p = 0 demands G cyclic.
struct RamificationCheck {
    bool ok = false;
    std::string reason;          // set when !ok
    long p = 0;
    std::vector<long> gamma;     // elements of Gamma_p (sorted); for p = 0 the trivial subgroup
    long n = 1;                  // complement order
    long complement_gen = 0;     // element of order n generating the complement
};

RamificationCheck ramification_check(const GroupPtr& g, long p);

}  // namespace ramalg
