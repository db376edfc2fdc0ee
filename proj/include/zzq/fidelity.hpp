#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "zzq/spectra.hpp"

namespace zzq {

/// Something that evaluates the pure-state fidelity F(tau) between a state and
/// its copy phase-shifted by tau.
class FidelityModel {
public:
    struct Spectrum {
        NumberDistribution distribution;
    };
    struct CoherentClosed {
        double n_mean;
    };
    struct RectangleClosed {
        std::size_t m;
    };
    struct RivasLuisClosed {
        double epsilon;
        std::size_t m;
    };
    /// factors[i] enters the product `multiplicity[i]` times.
    struct Product {
        std::vector<FidelityModel> factors;
        std::vector<std::size_t> multiplicity;
    };
    /// max(0, 1 - 2 lambda h_plus tau).
    struct LinearEnvelope {
        double h_plus;
    };
    /// cos^2(delta_h tau) up to pi/(2 delta_h), zero beyond.
    struct CosineEnvelope {
        double delta_h;
    };

    using Variant =
        std::variant<Spectrum, CoherentClosed, RectangleClosed, RivasLuisClosed, Product, LinearEnvelope, CosineEnvelope>;

    static FidelityModel spectrum(NumberDistribution d);
    static FidelityModel coherent(double n_mean);
    static FidelityModel rectangle(std::size_t m);
    static FidelityModel rivas_luis(double epsilon, std::size_t m);
    /// Closed-form model for a state family.
    static FidelityModel closed_form(const StateFamilySpec &spec);
    /// Product of distinct factors, each entering once.
    static FidelityModel product(std::vector<FidelityModel> factors);
    /// `copies` identical factors, evaluated as exp(copies * ln F).
    static FidelityModel power(FidelityModel factor, std::size_t copies);
    static FidelityModel linear_envelope(double h_plus);
    static FidelityModel cosine_envelope(double delta_h);

    const Variant &variant() const { return model_; }

private:
    explicit FidelityModel(Variant model) : model_(std::move(model)) {}

    Variant model_;
};

/// F(tau) in [0, 1] for tau >= 0; F(0) is exactly 1. Throws std::domain_error for
/// negative or non-finite tau.
double eval_fidelity(const FidelityModel &model, double tau);

/// max(0, 1 - 2 lambda h_plus tau) with the solved lambda constant.
double linear_envelope(double h_plus, double tau);

/// cos^2(delta_h tau), valid for 0 <= tau <= pi/(2 delta_h); throws std::domain_error outside.
double cosine_envelope(double delta_h, double tau);

/// Lower bound 1 - 4 eps + 3 eps^2 on a single Rivas-Luis factor's fidelity.
double rivas_luis_fidelity_floor(double epsilon);

}  // namespace zzq
