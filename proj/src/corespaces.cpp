#include <ddr/corespaces.hpp>
#include <ddr/parallel.hpp>

namespace ddr
{

  PolyBasis CoreSpaces::truncate(const PolyBasis & scalar, int deg)
  {
    PolyBasis out = scalar;
    out.coeff = scalar.coeff.topRows(poly_dim(scalar.frame.nvar, std::max(deg, -1)));
    return out;
  }

  MatrixXd edge_derivative_matrix(const Mesh & mesh, int iE, int ell,
                                  const PolyBasis & edge_scalar, const QuadratureRule & quad)
  {
    if (ell < 0) throw InvalidArgument("edge_derivative_matrix: negative degree");
    if (edge_scalar.degree < ell) throw InvalidArgument("edge_derivative_matrix: basis degree too low");
    const Edge & E = mesh.edge(iE);

    PolyBasis target = CoreSpaces::truncate(edge_scalar, ell);
    int n = target.size();
    int n_in = poly_dim(1, ell - 1);
    MatrixXd D(n, 2 + n_in);

    Eigen::Matrix<double, Eigen::Dynamic, 3> endpoints(2, 3);
    endpoints.row(0) = mesh.vertex(E.vertex[0]).coords.transpose();
    endpoints.row(1) = mesh.vertex(E.vertex[1]).coords.transpose();
    MatrixXd endvals = evaluate(target, endpoints)[0];
    D.col(0) = -endvals.col(0);
    D.col(1) = endvals.col(1);

    if (n_in > 0) {
      MatrixXd dm = monomial_derivative_map(1, target.degree, 0, 1. / target.frame.scale);
      PolyBasis deriv = target;
      deriv.degree = target.degree - 1;
      deriv.coeff = target.coeff * dm.transpose();
      PolyBasis source = CoreSpaces::truncate(edge_scalar, ell - 1);
      auto vd = evaluate(deriv, quad.points)[0];
      auto vs = evaluate(source, quad.points)[0];
      D.rightCols(n_in) = -vd * quad.weights.asDiagonal() * vs.transpose();
    }
    return D;
  }

  CoreSpaces::CoreSpaces(const Mesh & mesh, int k, int nthreads)
    : m_mesh(mesh), m_k(k),
      m_edges(mesh.n_edges()), m_faces(mesh.n_faces()), m_cells(mesh.n_cells())
  {
    if (k < 0) throw InvalidArgument("CoreSpaces: negative degree");
    const int dqr = quad_degree();

    parallel_for(mesh.n_edges(), nthreads, [&](int iE) {
      EdgeData & data = m_edges[iE];
      data.quad = edge_quadrature(mesh, iE, dqr);
      data.P = scalar_basis(mesh, EntityRef{EntityKind::Edge, iE}, k + 1);
      data.D_k = edge_derivative_matrix(mesh, iE, k, data.P, data.quad);
      data.D_kp1 = edge_derivative_matrix(mesh, iE, k + 1, data.P, data.quad);
    });

    parallel_for(mesh.n_faces(), nthreads, [&](int iF) {
      FaceData & data = m_faces[iF];
      EntityRef ent{EntityKind::Face, iF};
      data.quad = face_quadrature(mesh, iF, dqr);
      data.P = scalar_basis(mesh, ent, k + 1);
      data.RT = decomposition_basis(mesh, ent, SpaceKind::RT, k + 1);
      data.CG = decomposition_basis(mesh, ent, SpaceKind::CGtrim, k);
    });

    parallel_for(mesh.n_cells(), nthreads, [&](int iT) {
      CellData & data = m_cells[iT];
      EntityRef ent{EntityKind::Cell, iT};
      data.quad = cell_quadrature(mesh, iT, dqr);
      data.P = scalar_basis(mesh, ent, k + 2);
      data.SR = decomposition_basis(mesh, ent, SpaceKind::SRtrim, k);
      data.H = decomposition_basis(mesh, ent, SpaceKind::Htrim, k);
      data.Hc = decomposition_basis(mesh, ent, SpaceKind::HolyCompl, k);
      data.S = tensor_basis(mesh, ent, k, Codomain::Mat3, TensorSub::Sym);
    });
  }

} // namespace ddr
