"""Text templates (jinja2) for study summaries and plot scripts."""


def get_study_table_template_markdown() -> str:
    return """# {{ title }}

{{ description }}

| {{ param_headers | join(" | ") }} | {{ quantity_label }} | order |
|{% for _ in param_headers %}---|{% endfor %}---|---|
{% for row in rows -%}
| {{ row.params | join(" | ") }} | {{ row.quantity }} | {{ row.order }} |
{% endfor %}
Configuration: {% for key, value in config.items() %}`{{ key }}={{ value }}`{% if not loop.last %}, {% endif %}{% endfor %}
{% if failures %}
## Failed rows

{% for failure in failures -%}
- {{ failure.params | join(", ") }}: {{ failure.message }}
{% endfor %}{% endif %}"""


def get_plot_script_template_gnuplot() -> str:
    return """# {{ title }}
{% for item in series -%}
${{ item.name }} << EOD
{% for x, y in item.points -%}
{{ x }} {{ y }}
{% endfor -%}
EOD
{% endfor %}
set title "{{ title }}"
set xlabel "x"
set ylabel "u"
set key top left
{% if xrange %}set xrange [{{ xrange[0] }}:{{ xrange[1] }}]
{% endif -%}
plot {% for item in series %}${{ item.name }} using 1:2 with lines lw 2{% if item.dashed %} dashtype 2{% endif %} title "{{ item.title }}"{% if not loop.last %}, \\
     {% endif %}{% endfor %}
"""
