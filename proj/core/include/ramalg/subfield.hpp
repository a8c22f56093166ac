#pragma once

#include "ramalg/cyclotomic.hpp"
#include "ramalg/unitgroup.hpp"

#include <string>
#include <vector>

namespace ramalg {

enum class FieldClass { totally_real, cm, neither };

inline const char* field_class_name(FieldClass c) {
    switch (c) {
        case FieldClass::totally_real: return "totally_real";
        case FieldClass::cm: return "cm";
        default: return "neither";
    }
}

// The abelian field Q(zeta_N)^H, canonicalized to minimal conductor.
class SubfieldDesc {
public:
    SubfieldDesc() : conductor_(1), stabilizer_{0} {}  // Q
    SubfieldDesc(long conductor, std::vector<long> stabilizer_gens);

    static SubfieldDesc rationals() { return SubfieldDesc(); }
    static SubfieldDesc full_cyclotomic(long N) { return SubfieldDesc(N, {}); }
    // smallest abelian field containing all values (pre: values nonempty)
    static SubfieldDesc min_subfield(const std::vector<CycNumber>& values);

    long conductor() const { return conductor_; }
    const std::vector<long>& stabilizer() const { return stabilizer_; }
    std::vector<long> stabilizer_generators() const {
        return subgroup_generators(conductor_, stabilizer_);
    }

    long degree() const {
        return conductor_ == 1 ? 1 : euler_phi(conductor_) / static_cast<long>(stabilizer_.size());
    }

    bool is_totally_real() const {
        return conductor_ == 1 || subgroup_contains(stabilizer_, conductor_ - 1);
    }
    FieldClass classify() const;

    bool contains(const CycNumber& x) const;
    bool contains_field(const SubfieldDesc& other) const;
    bool operator==(const SubfieldDesc& o) const {
        return conductor_ == o.conductor_ && stabilizer_ == o.stabilizer_;
    }
    bool operator!=(const SubfieldDesc& o) const { return !(*this == o); }
    bool operator<(const SubfieldDesc& o) const {
        if (conductor_ != o.conductor_) return conductor_ < o.conductor_;
        return stabilizer_ < o.stabilizer_;
    }

    SubfieldDesc compositum(const SubfieldDesc& o) const;
    SubfieldDesc intersect(const SubfieldDesc& o) const;
    // fixed field of the subgroup generated by stabilizer and sigma_k (k coprime to conductor)
    SubfieldDesc fixed_by(long k) const;
    // the maximal totally real subfield
    SubfieldDesc totally_real_subfield() const { return fixed_by(conductor_ - 1); }

    std::string str() const;

private:
    long conductor_;
    std::vector<long> stabilizer_;  // sorted elements of H <= (Z/N)^x; {0} means trivial group at N=1

    void canonicalize();
};

// Splitting data of a rational prime in the abelian field F = Q(zeta_N)^H.
// All places over p share e, f, and local degree (F/Q abelian).
struct PlaceSplit {
    long prime = 0;
    long count = 0;         // number of places over p
    long e = 1;             // ramification index
    long f = 1;             // residue degree
    long local_degree = 1;  // e*f = [F_v : Q_p]
    std::vector<long> inertia;          // I_p * H, as subgroup of (Z/N)^x
    std::vector<long> decomposition;    // D_p * H
    std::vector<long> place_reps;       // canonical coset reps, one per place
};

PlaceSplit split_prime(const SubfieldDesc& F, long p);

// real embeddings of a totally real F correspond to cosets of H containing +-pairs;
// sign of x in F under the real embedding indexed by unit g (i.e. via sigma_g)
int real_embedding_sign(const SubfieldDesc& F, const CycNumber& x, long g);

}  // namespace ramalg
