#include <ddr/decompositions.hpp>

#include <Eigen/SVD>

#include <sstream>

namespace ddr
{

  int space_dim(SpaceKind kind, int ell)
  {
    switch (kind) {
    case SpaceKind::Roly: return FaceSpaceDim::Roly(ell);
    case SpaceKind::RolyCompl: return FaceSpaceDim::RolyCompl(ell);
    case SpaceKind::CGoly: return FaceSpaceDim::CGoly(ell);
    case SpaceKind::CGolyCompl: return FaceSpaceDim::CGolyCompl(ell);
    case SpaceKind::SRoly: return CellSpaceDim::SRoly(ell);
    case SpaceKind::SRolyCompl: return CellSpaceDim::SRolyCompl(ell);
    case SpaceKind::Holy: return CellSpaceDim::Holy(ell);
    case SpaceKind::HolyCompl: return CellSpaceDim::HolyCompl(ell);
    case SpaceKind::RT: return FaceSpaceDim::RT(ell);
    case SpaceKind::CGtrim: return FaceSpaceDim::CGtrim(ell);
    case SpaceKind::SRtrim: return CellSpaceDim::SRtrim(ell);
    default: return CellSpaceDim::Htrim(ell);
    }
  }

  Codomain space_codomain(SpaceKind kind)
  {
    switch (kind) {
    case SpaceKind::Roly:
    case SpaceKind::RolyCompl:
    case SpaceKind::RT: return Codomain::Vec2;
    case SpaceKind::CGoly:
    case SpaceKind::CGolyCompl:
    case SpaceKind::CGtrim: return Codomain::Mat2;
    default: return Codomain::Mat3;
    }
  }

  namespace
  {
    PolyBasis empty_basis(const Mesh & mesh, EntityRef ent, Codomain codomain, int degree)
    {
      PolyBasis b;
      b.entity = ent;
      b.frame = entity_frame(mesh, ent);
      b.codomain = codomain;
      b.ncomp = codomain_components(codomain);
      b.degree = std::max(degree, 0);
      b.coeff = MatrixXd::Zero(0, b.ncomp * poly_dim(b.frame.nvar, b.degree));
      return b;
    }

    // pad coefficient rows to a higher monomial degree (same span)
    PolyBasis pad_degree(const PolyBasis & in, int degree)
    {
      if (in.degree == degree) return in;
      PolyBasis out = in;
      out.degree = degree;
      int nm_in = in.nmono();
      int nm = poly_dim(in.frame.nvar, degree);
      out.coeff = MatrixXd::Zero(in.size(), in.ncomp * nm);
      for (int c = 0; c < in.ncomp; c++) {
        out.coeff.block(0, c * nm, in.size(), nm_in) = in.comp_block(c);
      }
      return out;
    }

    PolyBasis concatenate(const PolyBasis & a, const PolyBasis & b)
    {
      int degree = std::max(a.degree, b.degree);
      PolyBasis pa = pad_degree(a, degree);
      PolyBasis pb = pad_degree(b, degree);
      PolyBasis out = pa;
      out.coeff.conservativeResize(pa.size() + pb.size(), Eigen::NoChange);
      out.coeff.bottomRows(pb.size()) = pb.coeff;
      return out;
    }
  } // namespace

  PolyBasis span_basis(const Mesh & mesh, const PolyBasis & raw, int expected_dim)
  {
    if (expected_dim == 0) {
      if (raw.size() != 0) {
        // a nonzero span claimed to be trivial would be a construction bug
        QuadratureRule quad = entity_quadrature(mesh, raw.entity, 2 * raw.degree);
        MatrixXd G = gram_matrix(raw, raw, quad);
        if (G.norm() > 1e-20) throw DimensionMismatch("span_basis: nontrivial span for a trivial space");
      }
      return empty_basis(mesh, raw.entity, raw.codomain, raw.degree);
    }
    if (raw.size() == 0) {
      throw DimensionMismatch("span_basis: empty span for a space of positive dimension");
    }

    // ambient orthonormal full basis of the storage codomain at the same degree
    TensorSub sub = TensorSub::Full;
    PolyBasis ambient = (raw.codomain == Codomain::Scalar)
                          ? scalar_basis(mesh, raw.entity, raw.degree)
                          : tensor_basis(mesh, raw.entity, raw.degree, raw.codomain, sub);
    QuadratureRule quad = entity_quadrature(mesh, raw.entity, 2 * raw.degree);

    // coordinates of the raw family in the ambient basis
    MatrixXd X = gram_matrix(raw, ambient, quad);
    Eigen::JacobiSVD<MatrixXd> svd(X, Eigen::ComputeThinV);
    const VectorXd & sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); i++) {
      if (sv(i) > rank_cutoff * sv(0)) rank++;
    }
    if (rank != expected_dim) {
      std::ostringstream msg;
      msg << "span_basis: computed rank " << rank << " does not match the expected dimension "
          << expected_dim;
      throw DimensionMismatch(msg.str());
    }

    PolyBasis out = ambient;
    out.coeff = svd.matrixV().leftCols(rank).transpose() * ambient.coeff;
    return out;
  }

  PolyBasis decomposition_basis(const Mesh & mesh, EntityRef ent, SpaceKind kind, int ell)
  {
    int dim = space_dim(kind, ell);
    Codomain codomain = space_codomain(kind);
    if (dim == 0) return empty_basis(mesh, ent, codomain, std::max(ell, 0));

    switch (kind) {
    case SpaceKind::Roly: {
      PolyBasis source = scalar_basis(mesh, ent, ell + 1);
      return span_basis(mesh, apply_curl2(source), dim);
    }
    case SpaceKind::RolyCompl: {
      PolyBasis source = scalar_basis(mesh, ent, ell - 1);
      return span_basis(mesh, apply_coordinate_multiply(source), dim);
    }
    case SpaceKind::CGoly: {
      PolyBasis source = tensor_basis(mesh, ent, ell + 1, Codomain::Vec2);
      return span_basis(mesh, apply_curl2_rowwise(source), dim);
    }
    case SpaceKind::CGolyCompl: {
      PolyBasis source = tensor_basis(mesh, ent, ell - 1, Codomain::Vec2);
      PolyBasis tensored = apply_tensor_coordinate(source);
      PolyBasis raw = tensored;
      raw.coeff -= apply_adjugate2(tensored).coeff;
      return span_basis(mesh, raw, dim);
    }
    case SpaceKind::SRoly: {
      PolyBasis source = tensor_basis(mesh, ent, ell + 1, Codomain::Mat3, TensorSub::Sym);
      return span_basis(mesh, apply_curl3(source), dim);
    }
    case SpaceKind::SRolyCompl: {
      PolyBasis source = tensor_basis(mesh, ent, ell - 1, Codomain::Vec3);
      return span_basis(mesh, apply_dev3(apply_tensor_coordinate(source)), dim);
    }
    case SpaceKind::Holy: {
      PolyBasis source = scalar_basis(mesh, ent, ell + 2);
      return span_basis(mesh, apply_hessian(source), dim);
    }
    case SpaceKind::HolyCompl: {
      PolyBasis source = tensor_basis(mesh, ent, ell - 1, Codomain::Mat3, TensorSub::Traceless);
      return span_basis(mesh, apply_sym(apply_cross_coordinate(source)), dim);
    }
    case SpaceKind::RT: {
      PolyBasis a = decomposition_basis(mesh, ent, SpaceKind::Roly, ell - 1);
      PolyBasis b = decomposition_basis(mesh, ent, SpaceKind::RolyCompl, ell);
      PolyBasis cat = concatenate(a, b);
      orthonormalize(cat, entity_quadrature(mesh, ent, 2 * cat.degree));
      return cat;
    }
    case SpaceKind::CGtrim: {
      PolyBasis a = decomposition_basis(mesh, ent, SpaceKind::CGoly, ell - 1);
      PolyBasis b = decomposition_basis(mesh, ent, SpaceKind::CGolyCompl, ell);
      PolyBasis cat = concatenate(a, b);
      orthonormalize(cat, entity_quadrature(mesh, ent, 2 * cat.degree));
      return cat;
    }
    case SpaceKind::SRtrim: {
      PolyBasis a = decomposition_basis(mesh, ent, SpaceKind::SRoly, ell - 1);
      PolyBasis b = decomposition_basis(mesh, ent, SpaceKind::SRolyCompl, ell);
      PolyBasis cat = concatenate(a, b);
      orthonormalize(cat, entity_quadrature(mesh, ent, 2 * cat.degree));
      return cat;
    }
    default: { // Htrim
      PolyBasis a = decomposition_basis(mesh, ent, SpaceKind::Holy, ell - 2);
      PolyBasis b = decomposition_basis(mesh, ent, SpaceKind::HolyCompl, ell);
      PolyBasis cat = concatenate(a, b);
      orthonormalize(cat, entity_quadrature(mesh, ent, 2 * cat.degree));
      return cat;
    }
    }
  }

} // namespace ddr
