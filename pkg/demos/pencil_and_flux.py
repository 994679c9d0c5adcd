"""A pencil of potentials crossing out of integrability, and a flux twist.

The twisted pencil adds a multiple of a closed-looking twist to an exact
potential; the self-bracket grows linearly in the parameter, so only the
untwisted member is Courant while every member stays pre-Courant.  The
flux instance twists a translation structure by a scalar-coefficient
term; the potential stays integrable against itself but the twist term
records a nonzero bracket against the potential.
"""

from fractions import Fraction

from superpoisson import courant, gallery
from superpoisson.poisson import bracket
from superpoisson.superpoly import to_text


def main():
    pencil = gallery.build("twisted_pencil")
    theta = pencil.theta
    alpha = pencil.twist
    print("pencil potential:", to_text(theta))
    print("twist:", to_text(alpha))
    print()
    cross = bracket(theta, alpha)
    print("{theta, twist} =", to_text(cross))
    print("{theta, theta} =", to_text(bracket(theta, theta)))
    print("{twist, twist} =", to_text(bracket(alpha, alpha)))
    print()
    print("so {P(l), P(l)} = 2*l*{theta, twist}; verdicts along the pencil:")
    for lam in list(pencil.lambdas) + [Fraction(5), Fraction(-1, 2)]:
        P = pencil.potential_at(lam)
        sc = courant.classify(P)
        sigma = bracket(P, P)
        print("  l = %6s   verdict %-10s  {P,P} = %s"
              % (lam, sc.verdict, to_text(sigma)))
    print()

    closed = gallery.build("twisted_pencil_closed")
    print("the closed variant twists by", to_text(closed.twist))
    for lam in closed.lambdas:
        sc = courant.classify(closed.potential_at(lam))
        print("  l = %6s   verdict %s" % (lam, sc.verdict))
    print()

    rflux = gallery.build("rflux")
    theta_r = rflux.theta
    twist_r = rflux.twist
    print("flux instance: theta =", to_text(theta_r))
    print("twist =", to_text(twist_r))
    print("{theta, theta} =", to_text(bracket(theta_r, theta_r)))
    print("{theta, twist} =", to_text(bracket(theta_r, twist_r)))
    print("{twist, twist} =", to_text(bracket(twist_r, twist_r)))
    f = rflux.chart.symbol("f")
    nested = bracket(bracket(theta_r, twist_r), f)
    print("{{theta, twist}, f} =", to_text(nested))
    sc = courant.classify(rflux.default_potential)
    print("twisted verdict:", sc.verdict)


if __name__ == "__main__":
    main()
