# coding=utf-8
import numbers


def multiple_of(value, string_of_single, string_of_multiple, return_with_value=False):
    """
    Helps with english. If the word has a form of multiple, you can feed it's value and it returns you the
    appropriate form.

    :param value: Numerical value
    :type value: float | int
    :param string_of_single: String representation of a single thing
    :type string_of_single: str
    :param string_of_multiple: String representation of multiple things
    :type string_of_multiple: str
    :param return_with_value: Should it return with the value formatted?
    :type return_with_value: bool
    :return: Complete string representation
    :rtype: str
    """
    word = string_of_single if value == 1 else string_of_multiple
    if return_with_value:
        return '{} {}'.format(value, word)
    return word


def format_value(value, digits=6):
    """Compact text for floats, complex numbers, lists and everything else."""
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, numbers.Integral):
        return str(value)
    if isinstance(value, numbers.Real):
        return '{:.{}g}'.format(value, digits)
    if isinstance(value, numbers.Complex):
        return format_complex(value, digits)
    if isinstance(value, (list, tuple)):
        return ', '.join(format_value(item, digits) for item in value)
    return str(value)


def format_complex(value, digits=6):
    """``a+bi`` with ``digits`` significant digits per part."""
    value = complex(value)
    return '{:.{d}g}{:+.{d}g}i'.format(value.real, value.imag, d=digits)


def format_table(rows, separator=' : '):
    """
    Aligns ``(key, value)`` pairs into two columns.

    :type rows: list[tuple]
    :rtype: str
    """
    if not rows:
        return ''
    width = max(len(str(key)) for key, _ in rows)
    return '\n'.join('{:<{w}}{}{}'.format(str(key), separator, format_value(value), w=width) for key, value in rows)
